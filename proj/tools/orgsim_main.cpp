// orgsim command line harness: expands a scenario matrix, runs the Monte
// Carlo experiments and writes per-scenario CSV series plus a manifest.

#include <chrono>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orgsim/orgsim.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Selector is either a 0-based index into the expanded list or a scenario name.
std::vector<orgsim::ScenarioConfig> select_scenarios(std::vector<orgsim::ScenarioConfig> all,
                                                     const std::string& selector) {
    if (selector.empty()) return all;
    int index = -1;
    const auto [ptr, ec] = std::from_chars(selector.data(), selector.data() + selector.size(), index);
    if (ec == std::errc{} && ptr == selector.data() + selector.size()) {
        if (index < 0 || index >= static_cast<int>(all.size()))
            throw orgsim::ConfigError("scenario",
                                      "index " + selector + " out of range (have " +
                                          std::to_string(all.size()) + " scenarios)");
        return {all[index]};
    }
    std::vector<orgsim::ScenarioConfig> picked;
    for (const auto& cfg : all)
        if (orgsim::scenario_name(cfg) == selector) picked.push_back(cfg);
    if (picked.empty())
        throw orgsim::ConfigError("scenario", "no scenario named '" + selector + "'");
    return picked;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orgsim: simulate multi-unit organizations searching correlated task "
                 "landscapes while conforming to peers over a directed network"};
    app.set_version_flag("--version", ORGSIM_VERSION);

    std::string config_path;
    std::string out_dir = "results";
    std::string scenario_selector;
    std::uint64_t seed_override = 0;
    int workers = 0;
    bool figures = false;

    app.add_option("-c,--config", config_path, "Scenario matrix JSON (defaults apply if omitted)");
    app.add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed_override, "Master seed override");
    app.add_option("-w,--workers", workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--scenario", scenario_selector, "Run a single scenario (index or name)");
    app.add_flag("--reproduce-figures", figures,
                 "Emit the benchmark figure CSVs instead of per-scenario series");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string text = config_path.empty() ? "" : read_file(config_path);
        orgsim::ScenarioMatrix matrix = orgsim::parse_config(text);
        if (seed_opt->count() > 0) matrix.seed = seed_override;
        if (!matrix.output_dir.empty() && out_dir == "results") out_dir = matrix.output_dir;

        if (figures) {
            orgsim::reproduce_figures(matrix, out_dir, workers,
                                      [](const std::string& msg) { std::cout << msg << '\n'; });
            std::cout << "figure series written to " << out_dir << '\n';
            return 0;
        }

        const auto scenarios = select_scenarios(orgsim::expand_scenarios(matrix), scenario_selector);
        std::vector<orgsim::ExperimentResult> results;
        results.reserve(scenarios.size());

        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            std::cout << "scenario " << (i + 1) << '/' << scenarios.size() << ' '
                      << orgsim::scenario_name(scenarios[i]) << " ... " << std::flush;
            const auto s0 = std::chrono::steady_clock::now();
            results.push_back(orgsim::run_experiment(scenarios[i], workers));
            const double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
            std::cout << "done in " << orgsim::format_number(dt) << "s\n";
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        orgsim::emit_results(matrix, results, out_dir, wall);
        std::cout << results.size() << " scenario series written to " << out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
