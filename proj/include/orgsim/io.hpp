#pragma once

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "orgsim/common.hpp"
#include "orgsim/config.hpp"
#include "orgsim/engine.hpp"

namespace orgsim {

// All emitted numbers carry 10 significant digits.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_scenario_csv(const std::string& path, const ExperimentResult& res) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << "period,mean_performance,se_performance,mean_synchrony,se_synchrony\n";
    for (std::size_t t = 0; t < res.mean_performance.size(); ++t) {
        os << (t + 1) << ',' << format_number(res.mean_performance[t]) << ','
           << format_number(res.se_performance[t]) << ','
           << format_number(res.mean_synchrony[t]) << ','
           << format_number(res.se_synchrony[t]) << '\n';
    }
    if (!os) throw std::runtime_error("write failed for " + path);
}

struct EmittedScenario {
    std::string name;
    std::string file;
    ExperimentResult result;
};

inline nlohmann::json scenario_summary(const EmittedScenario& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["file"] = s.file;
    j["topology"] = to_string(s.result.config.topology);
    j["K"] = s.result.config.k;
    j["C"] = s.result.config.c;
    j["S"] = s.result.config.s;
    j["alpha"] = s.result.config.alpha;
    j["beta"] = s.result.config.beta;
    j["rho"] = s.result.config.rho;
    j["R"] = s.result.config.repetitions;
    if (!s.result.mean_performance.empty()) {
        j["terminal_mean_performance"] = s.result.mean_performance.back();
        j["terminal_mean_synchrony"] = s.result.mean_synchrony.back();
    }
    j["cv_terminal_performance"] = s.result.cv_terminal_performance;
    return j;
}

// The manifest captures everything that influenced the numbers: the full
// normalized configuration, the master seed and per-scenario summaries.
// Parsing its "config" object reproduces the exact scenario matrix.
inline void write_manifest(const std::string& path, const ScenarioMatrix& matrix,
                           const std::vector<EmittedScenario>& scenarios, double wall_seconds) {
    nlohmann::json doc;
    doc["tool"] = "orgsim";
    doc["version"] = ORGSIM_VERSION;
    doc["master_seed"] = matrix.seed;
    doc["wall_time_seconds"] = wall_seconds;
    doc["config"] = to_json(matrix);
    doc["scenarios"] = nlohmann::json::array();
    for (const auto& s : scenarios) doc["scenarios"].push_back(scenario_summary(s));

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << doc.dump(2) << '\n';
    if (!os) throw std::runtime_error("write failed for " + path);
}

// Writes one CSV per scenario plus manifest.json into out_dir.
inline std::vector<EmittedScenario> emit_results(const ScenarioMatrix& matrix,
                                                 const std::vector<ExperimentResult>& results,
                                                 const std::string& out_dir,
                                                 double wall_seconds) {
    std::filesystem::create_directories(out_dir);
    std::vector<EmittedScenario> emitted;
    emitted.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "s%02zu_", i);
        EmittedScenario s;
        s.name = scenario_name(results[i].config);
        s.file = prefix + s.name + ".csv";
        s.result = results[i];
        write_scenario_csv((std::filesystem::path(out_dir) / s.file).string(), results[i]);
        emitted.push_back(std::move(s));
    }
    write_manifest((std::filesystem::path(out_dir) / "manifest.json").string(), matrix, emitted,
                   wall_seconds);
    return emitted;
}

// One CSV per benchmark figure: the synchrony of the fully conforming
// organization, and synchrony/performance under equal weights for both
// coupling regimes, one series column per topology.
struct FigureSpec {
    std::string file;
    std::array<int, 3> regime;
    std::array<double, 2> weights;
    bool use_performance = false;  // otherwise synchrony
};

inline std::vector<FigureSpec> figure_plan() {
    return {
        {"fig_synchrony_full_conformity.csv", {3, 0, 0}, {0.0, 1.0}, false},
        {"fig_synchrony_internal.csv", {3, 0, 0}, {0.5, 0.5}, false},
        {"fig_synchrony_external.csv", {2, 2, 2}, {0.5, 0.5}, false},
        {"fig_performance_internal.csv", {3, 0, 0}, {0.5, 0.5}, true},
        {"fig_performance_external.csv", {2, 2, 2}, {0.5, 0.5}, true},
    };
}

inline void write_figure_csv(const std::string& path,
                             const std::vector<Topology>& topologies,
                             const std::vector<const std::vector<double>*>& series) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << "period";
    for (Topology t : topologies) os << ',' << to_string(t);
    os << '\n';
    const std::size_t periods = series.empty() ? 0 : series.front()->size();
    for (std::size_t t = 0; t < periods; ++t) {
        os << (t + 1);
        for (const auto* col : series) os << ',' << format_number((*col)[t]);
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed for " + path);
}

// Runs every experiment the figure plan needs (each regime/weights/topology
// combination once) and emits the figure CSVs plus a manifest.
inline void reproduce_figures(const ScenarioMatrix& base, const std::string& out_dir, int workers,
                              const std::function<void(const std::string&)>& progress = {}) {
    std::filesystem::create_directories(out_dir);
    const std::vector<Topology> topologies{Topology::Star, Topology::Ring, Topology::Cycle,
                                           Topology::Line};
    const double rho = base.rhos.empty() ? 0.9 : base.rhos.front();

    const auto t0 = std::chrono::steady_clock::now();
    std::map<std::tuple<int, int, int, double, int>, ExperimentResult> cache;
    std::vector<EmittedScenario> emitted;

    for (const FigureSpec& fig : figure_plan()) {
        std::vector<const std::vector<double>*> series;
        for (std::size_t i = 0; i < topologies.size(); ++i) {
            const auto key = std::make_tuple(fig.regime[0], fig.regime[1], fig.regime[2],
                                             fig.weights[0], static_cast<int>(topologies[i]));
            if (!cache.count(key)) {
                ScenarioConfig cfg;
                cfg.agents = base.agents;
                cfg.n = base.n;
                cfg.k = fig.regime[0];
                cfg.c = fig.regime[1];
                cfg.s = fig.regime[2];
                cfg.rho = rho;
                cfg.t_memory = base.t_memory;
                cfg.periods = base.periods;
                cfg.repetitions = base.repetitions;
                cfg.alpha = fig.weights[0];
                cfg.beta = fig.weights[1];
                cfg.topology = topologies[i];
                cfg.seed = base.seed;
                cfg.homologous_patterns = base.homologous_patterns;
                cfg.warmup_conformity = base.warmup_conformity;
                cfg.max_enum_bits = base.max_enum_bits;
                if (progress) progress("running " + scenario_name(cfg));
                cache.emplace(key, run_experiment(cfg, workers));
            }
        }
        for (Topology topo : topologies) {
            const auto key = std::make_tuple(fig.regime[0], fig.regime[1], fig.regime[2],
                                             fig.weights[0], static_cast<int>(topo));
            const ExperimentResult& res = cache.at(key);
            series.push_back(fig.use_performance ? &res.mean_performance : &res.mean_synchrony);
        }
        write_figure_csv((std::filesystem::path(out_dir) / fig.file).string(), topologies, series);
        if (progress) progress("wrote " + fig.file);
    }

    for (const auto& [key, res] : cache) {
        EmittedScenario s;
        s.name = scenario_name(res.config);
        s.file = "";  // figure columns, no per-scenario CSV
        s.result = res;
        emitted.push_back(std::move(s));
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest((std::filesystem::path(out_dir) / "manifest.json").string(), base, emitted,
                   wall);
}

}  // namespace orgsim
