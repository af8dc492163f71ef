#include "qrev/teleport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include "qrev/random.hpp"
#include "qrev/reversal.hpp"

namespace qrev::teleport {

namespace {

constexpr double kKrausDrop = 1e-14;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t local_dim(std::size_t joint, const char* what) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(joint))));
    if (d < 2 || d * d != joint) {
        throw Error(ErrorCode::Shape, std::string(what) + ": dimension " + std::to_string(joint) +
                                          " is not d^2 for some d >= 2");
    }
    return d;
}

/// d x d coefficient matrix of a bipartite vector: c(x, y) = v[x * d + y].
ComplexMatrix coefficients(const ComplexVector& v, std::size_t d) {
    ComplexMatrix c(idx(d), idx(d));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            c(idx(x), idx(y)) = v(idx(x * d + y));
        }
    }
    return c;
}

/// Operator on system 3 given by <bra|_{12} X |.>_3 for a d^3 vector family:
/// column a is (<bra| (x) I) applied to columns[a].
ComplexMatrix contract_12(const ComplexVector& bra12, const std::vector<ComplexVector>& columns,
                          std::size_t d) {
    ComplexMatrix out = zeros(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        const ComplexVector& x = columns[a];
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc = 0.0;
            for (std::size_t l = 0; l < d * d; ++l) {
                acc += std::conj(bra12(idx(l))) * x(idx(l * d + c));
            }
            out(idx(c), idx(a)) = acc;
        }
    }
    return out;
}

/// U_13 (s12 (x) |a>_3) for every basis ket a of system 3.
std::vector<ComplexVector> swapped_columns(const ComplexMatrix& swap, const ComplexVector& s12,
                                           std::size_t d) {
    std::vector<ComplexVector> columns;
    columns.reserve(d);
    for (std::size_t a = 0; a < d; ++a) {
        columns.emplace_back(swap * tensor(s12, StateVector::basis(d, a).amplitudes()));
    }
    return columns;
}

/// Minimal Kraus set with the same action, from the Choi (vectorization) matrix.
std::vector<ComplexMatrix> minimal_kraus(const std::vector<ComplexMatrix>& raw, std::size_t d) {
    const std::size_t n = d * d;
    ComplexMatrix choi = zeros(n, n);
    for (const auto& b : raw) {
        const Eigen::Map<const ComplexVector> vec(b.data(), b.size());
        choi += vec * vec.adjoint();
    }
    const HermitianEigen e = eig_hermitian(0.5 * (choi + choi.adjoint()));
    std::vector<ComplexMatrix> out;
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
        if (e.values(k) <= kKrausDrop) {
            break;
        }
        ComplexVector v = std::sqrt(e.values(k)) * e.vectors.col(k);
        out.emplace_back(Eigen::Map<ComplexMatrix>(v.data(), idx(d), idx(d)));
    }
    if (out.empty()) {
        out.push_back(zeros(d, d));
    }
    return out;
}

}  // namespace

// Scheme ---------------------------------------------------------------------

TeleportationScheme::TeleportationScheme(std::size_t d, StateVector resource,
                                         std::vector<WeightedVector> measurement)
    : d_(d), resource_(std::move(resource)), measurement_(std::move(measurement)) {
    if (d_ < 2) {
        throw Error(ErrorCode::Parameter, "teleportation needs d >= 2");
    }
    if (resource_.dim() != d_ * d_) {
        throw Error(ErrorCode::Shape, "resource must live on systems 2 and 3 (dimension d^2)");
    }
    if (measurement_.empty()) {
        throw Error(ErrorCode::Shape, "measurement needs at least one vector");
    }
    for (const auto& w : measurement_) {
        if (w.vector.dim() != d_ * d_) {
            throw Error(ErrorCode::Shape, "measurement vectors must live on systems 1 and 2");
        }
        if (!(w.gamma > 0.0) || w.gamma > 1.0) {
            throw Error(ErrorCode::Parameter, "measurement weights must lie in (0, 1]");
        }
    }
    if (completeness_residual() > kCompletenessTol) {
        throw Error(ErrorCode::Domain, "sum_i gamma_i |P_i><P_i| is not the identity");
    }
}

double TeleportationScheme::completeness_residual() const {
    ComplexMatrix total = zeros(d_ * d_, d_ * d_);
    for (const auto& w : measurement_) {
        total += w.gamma * w.vector.projector();
    }
    return max_abs_diff(total, identity(d_ * d_));
}

// Operators ------------------------------------------------------------------

ComplexMatrix swap_operator(std::size_t d) {
    if (d < 2) {
        throw Error(ErrorCode::Parameter, "swap operator needs d >= 2");
    }
    ComplexMatrix u = zeros(d * d * d, d * d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t c = 0; c < d; ++c) {
                u(idx((c * d + b) * d + a), idx((a * d + b) * d + c)) = 1.0;
            }
        }
    }
    return u;
}

ComplexVector to_alice_side(const ComplexVector& v23, std::size_t d) {
    if (static_cast<std::size_t>(v23.size()) != d * d) {
        throw Error(ErrorCode::Shape, "expected a vector on two d-dimensional systems");
    }
    ComplexVector out(v23.size());
    for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t c = 0; c < d; ++c) {
            out(idx(c * d + b)) = v23(idx(b * d + c));
        }
    }
    return out;
}

IdealOperation induced_ideal_operation(const TeleportationScheme& s, std::size_t outcome) {
    if (outcome >= s.outcomes()) {
        throw Error(ErrorCode::Index, "outcome " + std::to_string(outcome) + " out of range");
    }
    const std::size_t d = s.d();
    const WeightedVector& w = s.measurement()[outcome];
    const ComplexVector s12 = to_alice_side(s.resource().amplitudes(), d);
    const ComplexMatrix a =
        std::sqrt(w.gamma) * contract_12(w.vector.amplitudes(), swapped_columns(swap_operator(d), s12, d), d);
    return IdealOperation(a);
}

QuantumOperation induced_general_operation(const DensityMatrix& resource,
                                           const QuantumOperation& measurementOutcome) {
    const std::size_t d = local_dim(resource.dim(), "induced_general_operation resource");
    if (measurementOutcome.dim() != d * d) {
        throw Error(ErrorCode::Shape,
                    "measurement outcome must act on systems 1 and 2 of the resource's local dimension");
    }
    // sigma on 2 (x) 3 -> its counterpart on 1 (x) 2.
    ComplexMatrix moved(idx(d * d), idx(d * d));
    for (std::size_t col = 0; col < d * d; ++col) {
        moved.col(idx(col)) = to_alice_side(resource.matrix().col(idx(col)), d);
    }
    ComplexMatrix sigma12(idx(d * d), idx(d * d));
    for (std::size_t row = 0; row < d * d; ++row) {
        sigma12.row(idx(row)) = to_alice_side(moved.row(idx(row)).transpose(), d).transpose();
    }
    const HermitianEigen spectrum = eig_hermitian(0.5 * (sigma12 + sigma12.adjoint()));
    const ComplexMatrix swap = swap_operator(d);
    const ComplexMatrix id3 = identity(d);

    std::vector<ComplexMatrix> raw;
    for (const auto& aj : measurementOutcome.kraus()) {
        const ComplexMatrix lifted = tensor(aj, id3);
        for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
            const double pk = spectrum.values(k);
            if (pk <= kKrausDrop) {
                continue;
            }
            std::vector<ComplexVector> columns = swapped_columns(swap, spectrum.vectors.col(k), d);
            for (auto& x : columns) {
                x = lifted * x;
            }
            for (std::size_t l = 0; l < d * d; ++l) {
                raw.push_back(std::sqrt(pk) *
                              contract_12(StateVector::basis(d * d, l).amplitudes(), columns, d));
            }
        }
    }
    return QuantumOperation(minimal_kraus(raw, d));
}

ComplexMatrix simulate_outcome(const TeleportationScheme& s, std::size_t outcome, const ComplexMatrix& rho) {
    if (outcome >= s.outcomes()) {
        throw Error(ErrorCode::Index, "outcome " + std::to_string(outcome) + " out of range");
    }
    const std::size_t d = s.d();
    if (static_cast<std::size_t>(rho.rows()) != d || !is_square(rho)) {
        throw Error(ErrorCode::Shape, "input state must live on system 1");
    }
    const WeightedVector& w = s.measurement()[outcome];
    const ComplexMatrix global = tensor(rho, s.resource().projector());
    const ComplexMatrix projector = tensor(w.vector.projector(), identity(d));
    const std::array<std::size_t, 3> dims{d, d, d};
    const std::array<std::size_t, 1> keep{2};
    return w.gamma * partial_trace(projector * global * projector, dims, keep);
}

// Verification ---------------------------------------------------------------

namespace {

struct OutcomeCheck {
    Condition2Result condition2;
    double spread = 0.0;
    ComplexMatrix correction;
};

OutcomeCheck check_outcome(const TeleportationScheme& s, std::size_t i, double tol) {
    const IdealOperation a = induced_ideal_operation(s, i);
    const Subspace all = Subspace::full(s.d());
    OutcomeCheck r;
    r.condition2 = check_condition2(a, all, tol);
    const RealVector e = eig_hermitian(a.op().adjoint() * a.op()).values;
    r.spread = e.maxCoeff() - e.minCoeff();
    if (r.condition2.accepted) {
        r.correction = fix_global_phase(construct_reversal(a, all, tol).reversingUnitary);
    }
    return r;
}

}  // namespace

SchemeVerdict verify_scheme(const TeleportationScheme& s, double tol) {
    std::vector<std::future<OutcomeCheck>> pending;
    pending.reserve(s.outcomes());
    for (std::size_t i = 0; i < s.outcomes(); ++i) {
        pending.push_back(std::async(std::launch::async, check_outcome, std::cref(s), i, tol));
    }
    std::vector<OutcomeCheck> checks;
    checks.reserve(pending.size());
    for (auto& f : pending) {
        checks.push_back(f.get());
    }

    SchemeVerdict v;
    v.valid = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        v.probabilities.push_back(checks[i].condition2.muSquared);
        if (!checks[i].condition2.accepted) {
            v.valid = false;
            v.violations.push_back({"pr-spread", static_cast<long>(i), checks[i].spread});
        }
    }
    if (v.valid) {
        for (auto& c : checks) {
            v.corrections.push_back(std::move(c.correction));
        }
    }
    return v;
}

Characterization characterize_scheme(const TeleportationScheme& s, double tol) {
    const std::size_t d = s.d();
    const double flat = 1.0 / std::sqrt(static_cast<double>(d));
    const double law = 1.0 / static_cast<double>(d * d);
    auto max_dev = [flat](const std::vector<double>& c) {
        double dev = 0.0;
        for (double x : c) {
            dev = std::max(dev, std::abs(x - flat));
        }
        return dev;
    };

    Characterization out;
    const SchmidtDecomposition res = schmidt(s.resource(), d, d);
    out.resourceSchmidt = res.coefficients;
    if (const double dev = max_dev(res.coefficients); dev > tol) {
        out.violations.push_back({"resource-schmidt", -1, dev});
    }

    double inverseSquares = 0.0;
    bool singular = false;
    for (double alpha : res.coefficients) {
        singular = singular || alpha <= 0.0;
        inverseSquares += singular ? 0.0 : 1.0 / (alpha * alpha);
    }
    out.k = singular ? 0.0 : 1.0 / inverseSquares;

    // Resource basis of system 2 and the diagonal Schmidt matrix A.
    ComplexMatrix basis2(idx(d), idx(d));
    for (std::size_t m = 0; m < d; ++m) {
        basis2.col(idx(m)) = res.leftBasis[m].amplitudes();
    }
    const ComplexMatrix aSquared = diagonal(res.coefficients).cwiseAbs2().cast<Complex>();

    for (std::size_t i = 0; i < s.outcomes(); ++i) {
        const StateVector& p = s.measurement()[i].vector;
        const SchmidtDecomposition ms = schmidt(p, d, d);
        out.measurementSchmidt.push_back(ms.coefficients);
        if (const double dev = max_dev(ms.coefficients); dev > tol) {
            out.violations.push_back({"measurement-schmidt", static_cast<long>(i), dev});
        }
        // beta(l, m) = <1_l|<2_m|P_i> with 1_l computational.
        const ComplexMatrix beta = coefficients(p.amplitudes(), d) * basis2.conjugate();
        const ComplexMatrix bab = beta * aSquared * beta.adjoint();
        const double ratio = bab.trace().real() / static_cast<double>(d);
        const double residual = max_abs(bab - ratio * identity(d));
        out.ratios.push_back(ratio);
        out.babResiduals.push_back(residual);
        if (residual > tol) {
            out.violations.push_back({"bab", static_cast<long>(i), residual});
        }
        if (const double dev = std::abs(ratio - law); dev > tol) {
            out.violations.push_back({"probability-law", static_cast<long>(i), dev});
        }
    }
    out.valid = out.violations.empty();
    return out;
}

// Builders -------------------------------------------------------------------

TeleportationScheme build_bell_scheme() {
    const double h = 1.0 / std::numbers::sqrt2;
    auto vec = [](std::initializer_list<Complex> amps) {
        ComplexVector v(static_cast<Eigen::Index>(amps.size()));
        Eigen::Index k = 0;
        for (Complex a : amps) {
            v(k++) = a;
        }
        return StateVector::normalized(v);
    };
    std::vector<WeightedVector> bell{
        {1.0, vec({h, 0, 0, h})},    // phi+
        {1.0, vec({h, 0, 0, -h})},   // phi-
        {1.0, vec({0, h, h, 0})},    // psi+
        {1.0, vec({0, h, -h, 0})},   // psi-
    };
    return TeleportationScheme(2, vec({0, h, h, 0}), std::move(bell));
}

TeleportationScheme build_general_scheme(std::size_t d) {
    if (d < 2) {
        throw Error(ErrorCode::Parameter, "generalized Bell scheme needs d >= 2");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexVector resource = ComplexVector::Zero(idx(d * d));
    for (std::size_t j = 0; j < d; ++j) {
        resource(idx(j * d + j)) = norm;
    }
    std::vector<WeightedVector> vectors;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            ComplexVector v = ComplexVector::Zero(idx(d * d));
            for (std::size_t j = 0; j < d; ++j) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * j) % d) /
                                     static_cast<double>(d);
                v(idx(((j + b) % d) * d + j)) = std::polar(norm, angle);
            }
            vectors.push_back({1.0, StateVector::normalized(v)});
        }
    }
    return TeleportationScheme(d, StateVector::normalized(resource), std::move(vectors));
}

TeleportationScheme build_overcomplete_scheme(std::size_t d, std::size_t n, std::uint64_t seed) {
    if (d < 2) {
        throw Error(ErrorCode::Parameter, "overcomplete scheme needs d >= 2");
    }
    if (n <= d * d) {
        throw Error(ErrorCode::Parameter, "overcomplete scheme needs more than d^2 vectors");
    }
    Rng rng(seed);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const ComplexMatrix rotation = tensor(random_unitary(d, rng), identity(d));

    std::vector<WeightedVector> vectors;
    if (d == 2) {
        // Every real unit quaternion q gives the unitary q0 I + i(q1 X + q2 Y + q3 Z),
        // and these states have real overlaps. A harmonic frame of n unit
        // quaternions therefore resolves the identity with gamma = 4 / n.
        const double shift = 2.0 * std::numbers::pi * rng.uniform();
        const double gamma = 4.0 / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + shift;
            const double q0 = std::cos(t) / std::numbers::sqrt2;
            const double q1 = std::sin(t) / std::numbers::sqrt2;
            const double q2 = std::cos(2.0 * t) / std::numbers::sqrt2;
            const double q3 = std::sin(2.0 * t) / std::numbers::sqrt2;
            // (U (x) I) sum_j |j>|j> / sqrt2 stores U(x, j) / sqrt2 at index 2x + j.
            ComplexVector v(4);
            v << Complex(q0, q3) * norm, Complex(q2, q1) * norm, Complex(-q2, q1) * norm, Complex(q0, -q3) * norm;
            vectors.push_back({gamma, StateVector::normalized(rotation * v)});
        }
    }
    for (std::size_t b = 0; d > 2 && b < d; ++b) {
        const std::size_t count = n / d + (b < n % d ? 1 : 0);
        std::vector<double> offsets(d);
        for (double& phi : offsets) {
            phi = 2.0 * std::numbers::pi * rng.uniform();
        }
        const double gamma = static_cast<double>(d) / static_cast<double>(count);
        for (std::size_t m = 0; m < count; ++m) {
            ComplexVector v = ComplexVector::Zero(idx(d * d));
            for (std::size_t j = 0; j < d; ++j) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * j) % count) /
                                         static_cast<double>(count) +
                                     offsets[j];
                v(idx(((j + b) % d) * d + j)) = std::polar(norm, angle);
            }
            vectors.push_back({gamma, StateVector::normalized(rotation * v)});
        }
    }
    ComplexVector resource = ComplexVector::Zero(idx(d * d));
    for (std::size_t j = 0; j < d; ++j) {
        resource(idx(j * d + j)) = norm;
    }
    try {
        return TeleportationScheme(d, StateVector::normalized(resource), std::move(vectors));
    } catch (const Error& e) {
        throw Error(ErrorCode::Infeasible, std::string("overcomplete construction failed: ") + e.what());
    }
}

}  // namespace qrev::teleport
