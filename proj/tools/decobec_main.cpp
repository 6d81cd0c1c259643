// decobec_main.cpp — command-line entry: run / validate / oracle-check
#include "decobec/errors.hpp"
#include "decobec/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"decobec — pump-induced decoherence of a trapped condensate: "
                 "scenario runner and sweep harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::string format;

    CLI::App* run_cmd =
        app.add_subcommand("run", "execute a scenario config and write outputs");
    run_cmd->add_option("config", config_path, "scenario config (JSON)")->required();
    run_cmd->add_option("--out", out_dir,
                        "output directory (overrides config and environment)");
    run_cmd->add_option("--workers", workers, "concurrent sweep-point workers")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse and validate a config, report all issues");
    validate_cmd->add_option("config", config_path, "scenario config (JSON)")
        ->required();

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-check", "run a brute-force comparison scenario and gate on deviation");
    oracle_cmd->add_option("config", config_path, "scenario config (JSON)")->required();
    oracle_cmd->add_option("--out", out_dir,
                           "output directory (overrides config and environment)");
    oracle_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        const decobec::ScenarioConfig config = decobec::load_config(config_path);
        for (const std::string& warning : config.warnings)
            std::cerr << "warning: " << warning << "\n";

        if (validate_cmd->parsed()) {
            std::cout << "valid: scenario " << config.scenario << ", config hash "
                      << decobec::config_hash(config) << "\n";
            return 0;
        }
        if (oracle_cmd->parsed() && config.scenario != "oracle_check") {
            std::cerr << "error: oracle-check needs a config with scenario = "
                         "oracle_check (got '"
                      << config.scenario << "')\n";
            return 1;
        }

        decobec::RunOptions options;
        options.out_dir = out_dir;
        options.workers = workers;
        if (format == "csv") options.format = decobec::OutputFormat::Csv;
        if (format == "json") options.format = decobec::OutputFormat::Json;

        const decobec::RunManifest manifest = decobec::run_scenario(config, options);
        for (const std::string& warning : manifest.warnings)
            std::cerr << "warning: " << warning << "\n";
        for (const std::string& path : manifest.outputs)
            std::cout << "wrote " << path << "\n";
        if (manifest.max_abs_deviation)
            std::cout << "max |closed - oracle| = " << *manifest.max_abs_deviation
                      << "\n";
        return 0;
    } catch (const decobec::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const decobec::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const decobec::AccuracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
