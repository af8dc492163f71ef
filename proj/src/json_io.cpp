#include "qrev/json_io.hpp"

#include <cmath>

namespace qrev::json {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object()) {
        throw SchemaError(std::string("expected an object with field '") + name + "'");
    }
    const auto it = j.find(name);
    if (it == j.end()) {
        throw SchemaError(std::string("missing field '") + name + "'");
    }
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) {
        throw SchemaError(std::string(what) + " must be a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        throw SchemaError(std::string(what) + " must be finite");
    }
    return x;
}

std::size_t count(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) {
        throw SchemaError(std::string(what) + " must be a positive integer");
    }
    return static_cast<std::size_t>(j.get<long long>());
}

const json& array(const json& j, const char* what) {
    if (!j.is_array()) {
        throw SchemaError(std::string(what) + " must be an array");
    }
    return j;
}

ComplexVector decode_entries(const json& data, std::size_t expected) {
    array(data, "data");
    if (data.size() != expected) {
        throw SchemaError("data has " + std::to_string(data.size()) + " entries, expected " +
                          std::to_string(expected));
    }
    ComplexVector v(static_cast<Eigen::Index>(expected));
    for (std::size_t i = 0; i < expected; ++i) {
        v(static_cast<Eigen::Index>(i)) = decode_complex(data[i]);
    }
    return v;
}

json encode_violations(const std::vector<teleport::Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        out.push_back({{"kind", v.kind}, {"outcome", v.outcome}, {"value", v.value}});
    }
    return out;
}

}  // namespace

// Encoding -------------------------------------------------------------------

json encode(Complex z) {
    // Adding 0.0 folds -0.0 into 0.0.
    return json::array({z.real() + 0.0, z.imag() + 0.0});
}

json encode(const ComplexMatrix& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(encode(m(r, c)));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json encode(const StateVector& v) {
    json data = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        data.push_back(encode(v[i]));
    }
    return {{"dim", v.dim()}, {"data", std::move(data)}};
}

json encode(const Subspace& s) {
    json basis = json::array();
    for (const auto& v : s.basis()) {
        basis.push_back(encode(v));
    }
    return {{"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
}

json encode(const Measurement& m) {
    json outcomes = json::array();
    for (const auto& o : m.outcomes()) {
        json kraus = json::array();
        for (const auto& a : o.op.kraus()) {
            kraus.push_back(encode(a));
        }
        outcomes.push_back({{"label", o.label}, {"kraus", std::move(kraus)}});
    }
    return {{"dim", m.dim()}, {"outcomes", std::move(outcomes)}};
}

json encode(const teleport::TeleportationScheme& s) {
    json measurement = json::array();
    for (const auto& w : s.measurement()) {
        measurement.push_back({{"gamma", w.gamma}, {"vector", encode(w.vector)}});
    }
    return {{"d", s.d()}, {"resource", encode(s.resource())}, {"measurement", std::move(measurement)}};
}

json encode(const teleport::SchemeVerdict& v) {
    json corrections = json::array();
    for (const auto& u : v.corrections) {
        corrections.push_back(encode(u));
    }
    return {{"valid", v.valid},
            {"probabilities", v.probabilities},
            {"corrections", std::move(corrections)},
            {"violations", encode_violations(v.violations)}};
}

json encode(const teleport::Characterization& c) {
    return {{"valid", c.valid},
            {"resource_schmidt", c.resourceSchmidt},
            {"measurement_schmidt", c.measurementSchmidt},
            {"ratios", c.ratios},
            {"bab_residuals", c.babResiduals},
            {"k", c.k},
            {"violations", encode_violations(c.violations)}};
}

json encode(const ReversibilityCertificate& c) {
    return {{"mu_squared", c.muSquared}, {"residual", c.residual}, {"unitary", encode(c.reversingUnitary)}};
}

json encode(const mz::Params& p) {
    json out = {{"delta", p.delta}, {"cutoff", p.cutoff}};
    if (p.hamiltonian.size() != 0) {
        out["hamiltonian"] = encode(p.hamiltonian);
    }
    return out;
}

json encode(const mz::DemoReport& r) {
    return {{"outcome", r.outcome},
            {"probabilities", r.probabilities},
            {"fidelity_before_reversal", r.fidelityBeforeReversal},
            {"fidelity_after_reversal", r.fidelityAfterReversal}};
}

// Decoding -------------------------------------------------------------------

Complex decode_complex(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw SchemaError("complex numbers are encoded as [re, im]");
    }
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

ComplexMatrix decode_matrix(const json& j) {
    const std::size_t rows = count(field(j, "rows"), "rows");
    const std::size_t cols = count(field(j, "cols"), "cols");
    const ComplexVector flat = decode_entries(field(j, "data"), rows * cols);
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                flat(static_cast<Eigen::Index>(r * cols + c));
        }
    }
    return m;
}

StateVector decode_state(const json& j) {
    const std::size_t dim = count(field(j, "dim"), "dim");
    return StateVector(decode_entries(field(j, "data"), dim));
}

Subspace decode_subspace(const json& j) {
    const std::size_t ambient = count(field(j, "ambient_dim"), "ambient_dim");
    std::vector<StateVector> basis;
    for (const auto& v : array(field(j, "basis"), "basis")) {
        basis.push_back(decode_state(v));
    }
    return Subspace(ambient, basis);
}

Measurement decode_measurement(const json& j) {
    const std::size_t dim = count(field(j, "dim"), "dim");
    std::vector<MeasurementOutcome> outcomes;
    for (const auto& o : array(field(j, "outcomes"), "outcomes")) {
        const json& label = field(o, "label");
        if (!label.is_string()) {
            throw SchemaError("outcome label must be a string");
        }
        std::vector<ComplexMatrix> kraus;
        for (const auto& k : array(field(o, "kraus"), "kraus")) {
            kraus.push_back(decode_matrix(k));
            if (static_cast<std::size_t>(kraus.back().rows()) != dim) {
                throw Error(ErrorCode::Shape, "Kraus operator does not match the measurement dimension");
            }
        }
        outcomes.push_back({label.get<std::string>(), QuantumOperation(std::move(kraus))});
    }
    return Measurement(std::move(outcomes));
}

teleport::TeleportationScheme decode_scheme(const json& j) {
    const std::size_t d = count(field(j, "d"), "d");
    StateVector resource = decode_state(field(j, "resource"));
    std::vector<teleport::WeightedVector> vectors;
    for (const auto& w : array(field(j, "measurement"), "measurement")) {
        vectors.push_back({number(field(w, "gamma"), "gamma"), decode_state(field(w, "vector"))});
    }
    return teleport::TeleportationScheme(d, std::move(resource), std::move(vectors));
}

mz::Params decode_mz_params(const json& j) {
    mz::Params p;
    if (!j.is_object()) {
        throw SchemaError("Mabuchi-Zoller parameters must be an object");
    }
    if (j.contains("delta")) {
        p.delta = number(j["delta"], "delta");
    }
    if (j.contains("cutoff")) {
        p.cutoff = count(j["cutoff"], "cutoff");
    }
    if (j.contains("hamiltonian")) {
        p.hamiltonian = decode_matrix(j["hamiltonian"]);
    }
    p.validate();
    return p;
}

}  // namespace qrev::json
