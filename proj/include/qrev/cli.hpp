#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrev::cli {

enum class Command {
    CheckReversible,
    Reverse,
    InfoGain,
    MzDemo,
    TeleportVerify,
    TeleportCharacterize,
    TeleportBuild,
    Simulate,
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitRejected = 3;

struct CliConfig {
    Command command = Command::CheckReversible;
    std::optional<std::string> inputPath;
    std::optional<std::string> outputPath;
    std::optional<std::string> fixture;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    bool prettyJson = false;
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);
std::vector<std::string> command_names();

/// Names accepted by --fixture.
std::vector<std::string> fixture_names();
/// Built-in input document; std::nullopt for an unknown name.
std::optional<nlohmann::json> fixture(const std::string& name);

/// Executes one command. Input comes from the fixture, then inputPath, then
/// `in`; output goes to outputPath when set, otherwise to `out`. Returns
/// 0 on success, 2 for malformed or inconsistent input (with
/// {"error": {"code", "message"}}) and 3 when the input is well formed but
/// mathematically rejected (with the verdict).
int run(const CliConfig& config, std::istream& in, std::ostream& out);

}  // namespace qrev::cli
