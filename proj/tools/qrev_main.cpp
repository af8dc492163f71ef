#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qrev/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qrev: reversibility of quantum operations and teleportation schemes"};
    app.require_subcommand(1);

    qrev::cli::CliConfig config;
    std::string input;
    std::string output;
    std::string fixture;

    for (const std::string& name : qrev::cli::command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", input, "Read the JSON input from this file (default: stdin)");
        sub->add_option("--output", output, "Write the JSON result to this file (default: stdout)");
        std::string names;
        for (const std::string& f : qrev::cli::fixture_names()) {
            names += (names.empty() ? "" : ", ") + f;
        }
        sub->add_option("--fixture", fixture, "Use a built-in input instead of reading one: " + names);
        sub->add_option("--tolerance", config.tolerance, "Acceptance tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "Seed for sampled quantities");
        sub->add_flag("--pretty", config.prettyJson, "Indent the JSON output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qrev::cli::kExitInvalidInput;
    }

    config.command = *qrev::cli::parse_command(app.get_subcommands().front()->get_name());
    if (!input.empty()) {
        config.inputPath = input;
    }
    if (!output.empty()) {
        config.outputPath = output;
    }
    if (!fixture.empty()) {
        config.fixture = fixture;
    }
    return qrev::cli::run(config, std::cin, std::cout);
}
