#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qrev/cli.hpp"
#include "qrev/json_io.hpp"
#include "qrev/teleport.hpp"

using namespace qrev;
using Json = nlohmann::json;
namespace jio = qrev::json;

namespace {

struct Outcome {
    int code = 0;
    std::string text;
    Json body;
};

Outcome run_cli(cli::Command command, const std::string& input, const std::string& fixture = "",
                double tolerance = 1e-8, std::uint64_t seed = 0) {
    cli::CliConfig cfg;
    cfg.command = command;
    cfg.tolerance = tolerance;
    cfg.seed = seed;
    if (!fixture.empty()) {
        cfg.fixture = fixture;
    }
    std::istringstream in(input);
    std::ostringstream out;
    Outcome r;
    r.code = cli::run(cfg, in, out);
    r.text = out.str();
    r.body = Json::parse(r.text);
    return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("command names round-trip") {
    for (const std::string& name : cli::command_names()) {
        const auto c = cli::parse_command(name);
        REQUIRE(c.has_value());
        CHECK(cli::command_name(*c) == name);
    }
    CHECK_FALSE(cli::parse_command("teleport").has_value());
}

TEST_CASE("fixtures") {
    CHECK(*cli::fixture("bell") == jio::encode(teleport::build_bell_scheme()));
    CHECK(*cli::fixture("general-d3") == jio::encode(teleport::build_general_scheme(3)));
    const Json mz = *cli::fixture("mz-default");
    CHECK(mz["mz"]["delta"] == 0.1);
    CHECK(mz["mz"]["cutoff"] == 2);
    CHECK_FALSE(cli::fixture("nope").has_value());

    const Outcome unknown = run_cli(cli::Command::TeleportVerify, "", "nope");
    CHECK(unknown.code == cli::kExitInvalidInput);
    CHECK(unknown.body["error"]["code"] == "unknown-fixture");
}

TEST_CASE("check-reversible on the first Mabuchi-Zoller outcome") {
    const Outcome r = run_cli(cli::Command::CheckReversible, "", "mz-default");
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body["accepted"] == true);
    CHECK(r.body["mu_squared"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("check-reversible and reverse reject diag(1, 1/2)") {
    const Json input = {{"operator", jio::encode(ComplexMatrix(Eigen::Vector2cd(1.0, 0.5).asDiagonal()))}};
    const Outcome c = run_cli(cli::Command::CheckReversible, input.dump());
    CHECK(c.code == cli::kExitRejected);
    CHECK(c.body["residual"].get<double>() == doctest::Approx(0.375));
    const Outcome r = run_cli(cli::Command::Reverse, input.dump());
    CHECK(r.code == cli::kExitRejected);
    CHECK(r.body["reason"] == "not-reversible");
}

TEST_CASE("reverse emits a certificate that re-parses") {
    const Outcome r = run_cli(cli::Command::Reverse, R"({"mz": {"delta": 0.1, "cutoff": 2}, "outcome": "2"})");
    REQUIRE(r.code == cli::kExitOk);
    const ComplexMatrix u = jio::decode_matrix(r.body["unitary"]);
    CHECK(is_unitary(u));
    CHECK(r.body["mu_squared"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("info-gain") {
    const Outcome all = run_cli(cli::Command::InfoGain, R"({"mz": {}})");
    CHECK(all.code == cli::kExitOk);
    CHECK(all.body["mu_squared"].get<double>() == doctest::Approx(1.0));
    const Outcome one = run_cli(cli::Command::InfoGain, R"({"mz": {}, "outcome": "1"})");
    CHECK(one.body["mu_squared"].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("mz-demo") {
    const Outcome r = run_cli(cli::Command::MzDemo, "", "mz-default", 1e-8, 5);
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body["fidelity_after_reversal"].get<double>() >= 1 - 1e-9);
    const std::vector<double> p = r.body["probabilities"];
    CHECK(p[0] == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(p[2] == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("teleport-verify") {
    const Outcome bell = run_cli(cli::Command::TeleportVerify, "", "bell");
    CHECK(bell.code == cli::kExitOk);
    for (const auto& p : bell.body["probabilities"]) {
        CHECK(p.get<double>() == doctest::Approx(0.25).epsilon(1e-10));
    }
    const Outcome bad = run_cli(cli::Command::TeleportVerify, "", "bad-product");
    CHECK(bad.code == cli::kExitRejected);
    CHECK(bad.body["valid"] == false);
    const Outcome ch = run_cli(cli::Command::TeleportCharacterize, "", "general-d3");
    CHECK(ch.code == cli::kExitOk);
    CHECK(ch.body["k"].get<double>() == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("teleport-build output re-parses as a scheme") {
    for (const char* input : {R"({"kind": "bell"})", R"({"kind": "general", "d": 3})",
                              R"({"kind": "overcomplete", "d": 2, "n": 8})"}) {
        const Outcome r = run_cli(cli::Command::TeleportBuild, input, "", 1e-8, 3);
        REQUIRE(r.code == cli::kExitOk);
        const teleport::TeleportationScheme s = jio::decode_scheme(r.body);
        CHECK(jio::encode(s) == r.body);
        CHECK(run_cli(cli::Command::TeleportVerify, r.text).code == cli::kExitOk);
    }
    const Outcome small = run_cli(cli::Command::TeleportBuild, R"({"kind": "overcomplete", "d": 2, "n": 4})");
    CHECK(small.code == cli::kExitInvalidInput);
    CHECK(small.body["error"]["code"] == "parameter");
}

TEST_CASE("simulate") {
    const Json input = {
        {"measurement",
         {{"dim", 2},
          {"outcomes",
           {{{"label", "up"}, {"kraus", {jio::encode(ComplexMatrix(Eigen::Vector2cd(1.0, 0.0).asDiagonal()))}}},
            {{"label", "down"}, {"kraus", {jio::encode(ComplexMatrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal()))}}}}}}},
        {"state", {{"dim", 2}, {"data", {{1.0, 0.0}, {0.0, 0.0}}}}}};
    const Outcome r = run_cli(cli::Command::Simulate, input.dump(), "", 1e-8, 9);
    CHECK(r.code == cli::kExitOk);
    CHECK(r.body["outcome"] == "up");
    CHECK(r.body["probabilities"][1].get<double>() == 0.0);
}

TEST_CASE("malformed input") {
    const Outcome truncated = run_cli(cli::Command::TeleportVerify, R"({"d": 2, "resource": )");
    CHECK(truncated.code == cli::kExitInvalidInput);
    CHECK(truncated.body["error"]["code"] == "parse");

    const Outcome missing = run_cli(cli::Command::TeleportVerify, R"({"d": 2})");
    CHECK(missing.code == cli::kExitInvalidInput);
    CHECK(missing.body["error"]["code"] == "schema");

    const Outcome shape = run_cli(cli::Command::CheckReversible,
                                  R"({"operator": {"rows": 2, "cols": 2, "data": [[1, 0]]}})");
    CHECK(shape.code == cli::kExitInvalidInput);

    const Outcome notUnit = run_cli(cli::Command::TeleportVerify,
                                    R"({"d": 2, "resource": {"dim": 4, "data": [[1,0],[1,0],[0,0],[0,0]]},
                                        "measurement": []})");
    CHECK(notUnit.code == cli::kExitInvalidInput);
    CHECK(notUnit.body["error"]["code"] == "domain");

    const Outcome badDelta = run_cli(cli::Command::MzDemo, R"({"mz": {"delta": 0.9}})");
    CHECK(badDelta.code == cli::kExitInvalidInput);
    CHECK(badDelta.body["error"]["code"] == "parameter");

    const Outcome badComplex = run_cli(cli::Command::MzDemo, R"({"alpha": "one"})");
    CHECK(badComplex.code == cli::kExitInvalidInput);

    cli::CliConfig cfg;
    cfg.command = cli::Command::TeleportVerify;
    cfg.inputPath = "/nonexistent/input.json";
    std::istringstream in;
    std::ostringstream out;
    CHECK(cli::run(cfg, in, out) == cli::kExitInvalidInput);
    CHECK(Json::parse(out.str())["error"]["code"] == "io");
}

TEST_CASE("output is deterministic") {
    for (const std::string& name : cli::fixture_names()) {
        for (cli::Command c : {cli::Command::TeleportVerify, cli::Command::MzDemo}) {
            if ((name == "mz-default") != (c == cli::Command::MzDemo)) {
                continue;
            }
            CHECK(run_cli(c, "", name).text == run_cli(c, "", name).text);
        }
    }
    CHECK(run_cli(cli::Command::TeleportBuild, R"({"kind": "overcomplete", "d": 3, "n": 12})", "", 1e-8, 4).text ==
          run_cli(cli::Command::TeleportBuild, R"({"kind": "overcomplete", "d": 3, "n": 12})", "", 1e-8, 4).text);
}

TEST_CASE("loosening the tolerance never invalidates") {
    const std::vector<double> tols{1e-12, 1e-10, 1e-8, 1e-6, 1e-3, 0.1};
    Rng rng(40);
    std::vector<std::string> inputs{cli::fixture("bell")->dump(), cli::fixture("bad-product")->dump(),
                                    cli::fixture("general-d3")->dump()};
    for (int k = 0; k < 5; ++k) {
        // Bell measurement with a slightly unbalanced resource.
        const double eps = 1e-9 * std::pow(100.0, k);
        ComplexVector s = ComplexVector::Zero(4);
        s(1) = std::sqrt(0.5 + eps);
        s(2) = std::sqrt(0.5 - eps);
        inputs.push_back(jio::encode(teleport::TeleportationScheme(2, StateVector::normalized(s),
                                                                     teleport::build_bell_scheme().measurement()))
                             .dump());
    }
    for (const std::string& input : inputs) {
        bool previous = false;
        for (double t : tols) {
            const bool valid = run_cli(cli::Command::TeleportVerify, input, "", t).code == cli::kExitOk;
            CHECK((!previous || valid));
            previous = valid;
        }
    }
}

TEST_CASE("output file") {
    const std::string path = "qrev_cli_test_output.json";
    cli::CliConfig cfg;
    cfg.command = cli::Command::TeleportVerify;
    cfg.fixture = "bell";
    cfg.outputPath = path;
    std::istringstream in;
    std::ostringstream out;
    REQUIRE(cli::run(cfg, in, out) == cli::kExitOk);
    CHECK(out.str().empty());
    std::ifstream file(path);
    std::stringstream contents;
    contents << file.rdbuf();
    CHECK(contents.str() == run_cli(cli::Command::TeleportVerify, "", "bell").text);
    std::remove(path.c_str());
}

}  // TEST_SUITE
