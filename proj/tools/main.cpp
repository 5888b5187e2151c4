#include "supercrit/config.hpp"
#include "supercrit/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"supercrit2d: pseudospectral runs and inequality checks for the slightly "
                 "supercritical 2-D Euler family"};
    app.require_subcommand(1);

    std::string config_arg;
    std::string output;
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_set = false, output_set = false, threads_set = false;

    CLI::App* run = app.add_subcommand("run", "execute a scenario config (path or bundled name)");
    run->add_option("config", config_arg, "config file path or bundled scenario name")->required();
    run->add_option("--output", output, "output directory override")->each([&](const std::string&) {
        output_set = true;
    });
    run->add_option("--threads", threads, "worker threads for corpus sweeps")
        ->each([&](const std::string&) { threads_set = true; });
    run->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
        seed_set = true;
    });

    CLI::App* validate = app.add_subcommand("validate", "schema-check a config without running");
    validate->add_option("config", config_arg, "config file path or bundled scenario name")
        ->required();

    CLI::App* list = app.add_subcommand("list", "list bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& name : supercrit::bundled_scenario_names()) {
                supercrit::Config cfg =
                    supercrit::Config::parse_string(supercrit::bundled_scenario_text(name), name);
                std::cout << name << "  (mode=" << cfg.get_string("mode", "?") << ")\n";
            }
            return 0;
        }
        if (validate->parsed()) {
            supercrit::validate_scenario(config_arg);
            std::cout << "ok: " << config_arg << "\n";
            return 0;
        }
        supercrit::ScenarioOverrides overrides;
        if (output_set) overrides.output = output;
        if (threads_set) overrides.threads = threads;
        if (seed_set) overrides.seed = seed;
        supercrit::ScenarioResult result = supercrit::run_scenario(config_arg, overrides);
        std::cout << result.report_json << "\n";
        if (result.exit_code != 0)
            std::cerr << "scenario finished with status " << result.exit_code << "\n";
        return result.exit_code;
    } catch (const supercrit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
