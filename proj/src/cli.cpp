#include "qrev/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <utility>

#include "qrev/json_io.hpp"

namespace qrev::cli {

using nlohmann::json;
namespace jio = qrev::json;

namespace {

constexpr std::array<std::pair<Command, const char*>, 8> kCommands{{
    {Command::CheckReversible, "check-reversible"},
    {Command::Reverse, "reverse"},
    {Command::InfoGain, "info-gain"},
    {Command::MzDemo, "mz-demo"},
    {Command::TeleportVerify, "teleport-verify"},
    {Command::TeleportCharacterize, "teleport-characterize"},
    {Command::TeleportBuild, "teleport-build"},
    {Command::Simulate, "simulate"},
}};

/// Condition-3 sampling budget used by check-reversible.
constexpr std::size_t kCondition3Samples = 50;

struct Outcome {
    int code = kExitOk;
    json body;
};

/// Input failure detected by the driver itself.
class InputError : public std::runtime_error {
public:
    InputError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

json error_body(std::string_view code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

const json& require(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw jio::SchemaError(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

// Reversibility inputs -------------------------------------------------------

struct ReversalInput {
    IdealOperation op;
    Subspace space;
};

std::size_t mz_outcome_index(const Measurement& m, const json& input) {
    std::string label = "1";
    if (input.contains("outcome")) {
        if (!input["outcome"].is_string()) {
            throw jio::SchemaError("outcome must be a label string");
        }
        label = input["outcome"].get<std::string>();
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].label == label) {
            return i;
        }
    }
    throw InputError("schema", "unknown Mabuchi-Zoller outcome '" + label + "'");
}

ReversalInput reversal_input(const json& input) {
    if (input.is_object() && input.contains("mz")) {
        const mz::Params p = jio::decode_mz_params(input["mz"]);
        const Measurement m = mz::build_measurement(p);
        const std::size_t i = mz_outcome_index(m, input);
        Subspace space = input.contains("subspace") ? jio::decode_subspace(input["subspace"])
                                                    : mz::reversible_subspace(p);
        return {IdealOperation(m[i].op.kraus().front()), std::move(space)};
    }
    IdealOperation op(jio::decode_matrix(require(input, "operator")));
    Subspace space = input.contains("subspace") ? jio::decode_subspace(input["subspace"])
                                                : Subspace::full(op.dim());
    return {std::move(op), std::move(space)};
}

Outcome check_reversible(const json& input, const CliConfig& cfg) {
    const ReversalInput r = reversal_input(input);
    const Condition2Result c2 = check_condition2(r.op, r.space, cfg.tolerance);
    const Condition3Result c3 = check_condition3(r.op, r.space, kCondition3Samples, cfg.seed, cfg.tolerance);
    json body = {{"accepted", c2.accepted},
                 {"mu_squared", c2.muSquared},
                 {"residual", c2.residual},
                 {"condition3_spread", c3.spread}};
    return {c2.accepted ? kExitOk : kExitRejected, std::move(body)};
}

Outcome reverse(const json& input, const CliConfig& cfg) {
    const ReversalInput r = reversal_input(input);
    try {
        return {kExitOk, jio::encode(construct_reversal(r.op, r.space, cfg.tolerance))};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotReversible && e.code() != ErrorCode::ZeroProbability) {
            throw;
        }
        const Condition2Result c2 = check_condition2(r.op, r.space, cfg.tolerance);
        return {kExitRejected,
                {{"accepted", false},
                 {"mu_squared", c2.muSquared},
                 {"residual", c2.residual},
                 {"reason", to_string(e.code())}}};
    }
}

Outcome info_gain(const json& input, const CliConfig& cfg) {
    std::vector<ComplexMatrix> kraus;
    std::optional<Subspace> space;
    if (input.is_object() && input.contains("mz")) {
        const mz::Params p = jio::decode_mz_params(input["mz"]);
        const Measurement m = mz::build_measurement(p);
        if (input.contains("outcome")) {
            kraus = m[mz_outcome_index(m, input)].op.kraus();
        } else {
            for (const auto& o : m.outcomes()) {
                kraus.insert(kraus.end(), o.op.kraus().begin(), o.op.kraus().end());
            }
        }
        space = mz::reversible_subspace(p);
    } else {
        const json& list = require(input, "kraus");
        if (!list.is_array()) {
            throw jio::SchemaError("kraus must be an array of matrices");
        }
        for (const auto& k : list) {
            kraus.push_back(jio::decode_matrix(k));
        }
    }
    const QuantumOperation op(std::move(kraus));
    if (input.contains("subspace")) {
        space = jio::decode_subspace(input["subspace"]);
    }
    const InformationGainResult r =
        information_gain_check(op, space ? *space : Subspace::full(op.dim()), cfg.tolerance);
    json body = {{"accepted", r.accepted}, {"mu_squared", r.muSquared}, {"eigenvalues", r.eigenvalues}};
    return {r.accepted ? kExitOk : kExitRejected, std::move(body)};
}

Outcome mz_demo(const json& input, const CliConfig& cfg) {
    const mz::Params p = jio::decode_mz_params(input.is_object() && input.contains("mz") ? input["mz"] : json::object());
    Complex alpha{1.0 / std::numbers::sqrt2, 0.0};
    Complex beta = alpha;
    if (input.contains("alpha")) {
        alpha = jio::decode_complex(input["alpha"]);
    }
    if (input.contains("beta")) {
        beta = jio::decode_complex(input["beta"]);
    }
    return {kExitOk, jio::encode(mz::demo_reverse(p, alpha, beta, cfg.seed))};
}

Outcome teleport_verify(const json& input, const CliConfig& cfg) {
    const teleport::SchemeVerdict v = teleport::verify_scheme(jio::decode_scheme(input), cfg.tolerance);
    return {v.valid ? kExitOk : kExitRejected, jio::encode(v)};
}

Outcome teleport_characterize(const json& input, const CliConfig& cfg) {
    const teleport::Characterization c = teleport::characterize_scheme(jio::decode_scheme(input), cfg.tolerance);
    return {c.valid ? kExitOk : kExitRejected, jio::encode(c)};
}

Outcome teleport_build(const json& input, const CliConfig& cfg) {
    const json& kind = require(input, "kind");
    if (!kind.is_string()) {
        throw jio::SchemaError("kind must be a string");
    }
    auto dimension = [&input](const char* name) {
        const json& v = require(input, name);
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw jio::SchemaError(std::string(name) + " must be a nonnegative integer");
        }
        return static_cast<std::size_t>(v.get<long long>());
    };
    const std::string k = kind.get<std::string>();
    if (k == "bell") {
        return {kExitOk, jio::encode(teleport::build_bell_scheme())};
    }
    if (k == "general") {
        return {kExitOk, jio::encode(teleport::build_general_scheme(dimension("d")))};
    }
    if (k == "overcomplete") {
        return {kExitOk,
                jio::encode(teleport::build_overcomplete_scheme(dimension("d"), dimension("n"), cfg.seed))};
    }
    throw InputError("schema", "unknown scheme kind '" + k + "'");
}

Outcome simulate(const json& input, const CliConfig& cfg) {
    const Measurement m = jio::decode_measurement(require(input, "measurement"));
    const json& state = require(input, "state");
    const DensityMatrix rho = state.is_object() && state.contains("rows")
                                  ? DensityMatrix(jio::decode_matrix(state))
                                  : DensityMatrix::pure(jio::decode_state(state));
    const SampledOutcome s = sample_outcome(m, rho, cfg.seed);
    return {kExitOk,
            {{"outcome", s.label},
             {"index", s.index},
             {"probabilities", outcome_probabilities(m, rho)},
             {"posterior", jio::encode(s.posterior.matrix())}}};
}

Outcome dispatch(const CliConfig& cfg, const json& input) {
    switch (cfg.command) {
        case Command::CheckReversible: return check_reversible(input, cfg);
        case Command::Reverse: return reverse(input, cfg);
        case Command::InfoGain: return info_gain(input, cfg);
        case Command::MzDemo: return mz_demo(input, cfg);
        case Command::TeleportVerify: return teleport_verify(input, cfg);
        case Command::TeleportCharacterize: return teleport_characterize(input, cfg);
        case Command::TeleportBuild: return teleport_build(input, cfg);
        case Command::Simulate: return simulate(input, cfg);
    }
    throw InputError("schema", "unknown command");
}

json load_input(const CliConfig& cfg, std::istream& in) {
    if (cfg.fixture) {
        auto doc = fixture(*cfg.fixture);
        if (!doc) {
            throw InputError("unknown-fixture", "no built-in fixture named '" + *cfg.fixture + "'");
        }
        return *doc;
    }
    std::string text;
    if (cfg.inputPath) {
        std::ifstream file(*cfg.inputPath, std::ios::binary);
        if (!file) {
            throw InputError("io", "cannot open input file '" + *cfg.inputPath + "'");
        }
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    } else {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("parse", e.what());
    }
}

Outcome execute(const CliConfig& cfg, std::istream& in) {
    try {
        if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
            throw InputError("parameter", "tolerance must be positive");
        }
        return dispatch(cfg, load_input(cfg, in));
    } catch (const InputError& e) {
        return {kExitInvalidInput, error_body(e.code(), e.what())};
    } catch (const jio::SchemaError& e) {
        return {kExitInvalidInput, error_body("schema", e.what())};
    } catch (const Error& e) {
        return {kExitInvalidInput, error_body(to_string(e.code()), e.what())};
    } catch (const nlohmann::json::exception& e) {
        return {kExitInvalidInput, error_body("schema", e.what())};
    }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    for (const auto& [c, n] : kCommands) {
        if (name == n) {
            return c;
        }
    }
    return std::nullopt;
}

std::string command_name(Command c) {
    for (const auto& [cmd, n] : kCommands) {
        if (cmd == c) {
            return n;
        }
    }
    return "unknown";
}

std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto& entry : kCommands) {
        out.emplace_back(entry.second);
    }
    return out;
}

std::vector<std::string> fixture_names() { return {"mz-default", "bell", "general-d3", "bad-product"}; }

std::optional<json> fixture(const std::string& name) {
    if (name == "mz-default") {
        const double h = 1.0 / std::numbers::sqrt2;
        return json{{"mz", jio::encode(mz::Params{})},
                    {"outcome", "1"},
                    {"alpha", jio::encode(Complex{h, 0.0})},
                    {"beta", jio::encode(Complex{h, 0.0})}};
    }
    if (name == "bell") {
        return jio::encode(teleport::build_bell_scheme());
    }
    if (name == "general-d3") {
        return jio::encode(teleport::build_general_scheme(3));
    }
    if (name == "bad-product") {
        const teleport::TeleportationScheme bell = teleport::build_bell_scheme();
        return jio::encode(teleport::TeleportationScheme(2, StateVector::basis(4, 0), bell.measurement()));
    }
    return std::nullopt;
}

int run(const CliConfig& config, std::istream& in, std::ostream& out) {
    const Outcome result = execute(config, in);
    const std::string text = result.body.dump(config.prettyJson ? 2 : -1) + "\n";
    if (config.outputPath) {
        std::ofstream file(*config.outputPath, std::ios::binary | std::ios::trunc);
        if (!file) {
            out << error_body("io", "cannot open output file '" + *config.outputPath + "'").dump() << "\n";
            return kExitInvalidInput;
        }
        file << text;
    } else {
        out << text;
    }
    return result.code;
}

}  // namespace qrev::cli
