#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "orgsim/common.hpp"
#include "orgsim/engine.hpp"
#include "orgsim/network.hpp"

namespace orgsim {

// A scenario matrix: the shared fixed parameters plus the lists whose cross
// product yields one ScenarioConfig per combination. Defaults are the
// benchmark parameterization (P=5, N=4, rho=0.9, T_L=50, T=500, R=1000) with
// the internal-only coupling regime, equal preference weights and all four
// topologies.
struct ScenarioMatrix {
    int agents = 5;
    int n = 4;
    int t_memory = 50;
    int periods = 500;
    int repetitions = 1000;
    std::uint64_t seed = 42;
    bool homologous_patterns = true;
    bool warmup_conformity = true;
    int max_enum_bits = 24;

    std::vector<Topology> topologies{Topology::Star, Topology::Ring, Topology::Cycle,
                                     Topology::Line};
    std::vector<std::array<int, 3>> regimes{{3, 0, 0}};           // (K, C, S)
    std::vector<std::array<double, 2>> weights{{0.5, 0.5}};       // (alpha, beta)
    std::vector<double> rhos{0.9};
    std::string output_dir;

    bool operator==(const ScenarioMatrix&) const = default;
};

inline std::vector<ScenarioConfig> expand_scenarios(const ScenarioMatrix& m) {
    std::vector<ScenarioConfig> out;
    for (const auto& regime : m.regimes)
        for (const auto& w : m.weights)
            for (double rho : m.rhos)
                for (Topology topo : m.topologies) {
                    ScenarioConfig cfg;
                    cfg.agents = m.agents;
                    cfg.n = m.n;
                    cfg.k = regime[0];
                    cfg.c = regime[1];
                    cfg.s = regime[2];
                    cfg.rho = rho;
                    cfg.t_memory = m.t_memory;
                    cfg.periods = m.periods;
                    cfg.repetitions = m.repetitions;
                    cfg.alpha = w[0];
                    cfg.beta = w[1];
                    cfg.topology = topo;
                    cfg.seed = m.seed;
                    cfg.homologous_patterns = m.homologous_patterns;
                    cfg.warmup_conformity = m.warmup_conformity;
                    cfg.max_enum_bits = m.max_enum_bits;
                    cfg.validate();
                    out.push_back(cfg);
                }
    return out;
}

inline std::string scenario_name(const ScenarioConfig& cfg) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s_K%dC%dS%d_a%.2f_rho%.2f", to_string(cfg.topology), cfg.k,
                  cfg.c, cfg.s, cfg.alpha, cfg.rho);
    return buf;
}

namespace detail {

template <class T>
T get_scalar(const nlohmann::json& j, const std::string& key, const char* expected) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(key, std::string("expected ") + expected);
    }
}

}  // namespace detail

inline ScenarioMatrix scenario_matrix_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config", "top-level document must be an object");

    static const std::set<std::string> known{
        "P", "N", "T", "T_L", "R", "seed", "topologies", "regimes", "weights", "rho",
        "homologous_patterns", "warmup_conformity", "max_enum_bits", "output_dir"};
    for (const auto& item : doc.items())
        if (!known.count(item.key())) throw ConfigError(item.key(), "unknown configuration key");

    ScenarioMatrix m;
    if (doc.contains("P")) m.agents = detail::get_scalar<int>(doc, "P", "an integer");
    if (doc.contains("N")) m.n = detail::get_scalar<int>(doc, "N", "an integer");
    if (doc.contains("T")) m.periods = detail::get_scalar<int>(doc, "T", "an integer");
    if (doc.contains("T_L")) m.t_memory = detail::get_scalar<int>(doc, "T_L", "an integer");
    if (doc.contains("R")) m.repetitions = detail::get_scalar<int>(doc, "R", "an integer");
    if (doc.contains("seed")) m.seed = detail::get_scalar<std::uint64_t>(doc, "seed", "an unsigned integer");
    if (doc.contains("homologous_patterns"))
        m.homologous_patterns = detail::get_scalar<bool>(doc, "homologous_patterns", "a boolean");
    if (doc.contains("warmup_conformity"))
        m.warmup_conformity = detail::get_scalar<bool>(doc, "warmup_conformity", "a boolean");
    if (doc.contains("max_enum_bits"))
        m.max_enum_bits = detail::get_scalar<int>(doc, "max_enum_bits", "an integer");
    if (doc.contains("output_dir"))
        m.output_dir = detail::get_scalar<std::string>(doc, "output_dir", "a string");

    if (doc.contains("topologies")) {
        const auto& arr = doc.at("topologies");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("topologies", "expected a non-empty list of topology names");
        m.topologies.clear();
        for (const auto& e : arr) {
            if (!e.is_string()) throw ConfigError("topologies", "entries must be strings");
            m.topologies.push_back(topology_from_string(e.get<std::string>()));
        }
    }

    if (doc.contains("regimes")) {
        const auto& arr = doc.at("regimes");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("regimes", "expected a non-empty list of [K,C,S] triples");
        m.regimes.clear();
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 3)
                throw ConfigError("regimes", "each regime must be a [K,C,S] triple");
            m.regimes.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
        }
    }

    if (doc.contains("weights")) {
        const auto& arr = doc.at("weights");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("weights", "expected a non-empty list of [alpha,beta] pairs");
        m.weights.clear();
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("weights", "each entry must be an [alpha,beta] pair");
            const double a = e[0].get<double>();
            const double b = e[1].get<double>();
            if (a < 0.0 || b < 0.0 || std::abs(a + b - 1.0) > 1e-9)
                throw ConfigError("weights", "weights must be nonnegative and sum to 1");
            m.weights.push_back({a, b});
        }
    }

    if (doc.contains("rho")) {
        const auto& val = doc.at("rho");
        m.rhos.clear();
        if (val.is_number()) {
            m.rhos.push_back(val.get<double>());
        } else if (val.is_array() && !val.empty()) {
            for (const auto& e : val) m.rhos.push_back(e.get<double>());
        } else {
            throw ConfigError("rho", "expected a number or a non-empty list of numbers");
        }
    }

    expand_scenarios(m);  // every expanded combination must validate
    return m;
}

inline ScenarioMatrix parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = text.empty() ? nlohmann::json::object() : nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return scenario_matrix_from_json(doc);
}

inline nlohmann::json to_json(const ScenarioMatrix& m) {
    nlohmann::json doc;
    doc["P"] = m.agents;
    doc["N"] = m.n;
    doc["T"] = m.periods;
    doc["T_L"] = m.t_memory;
    doc["R"] = m.repetitions;
    doc["seed"] = m.seed;
    doc["homologous_patterns"] = m.homologous_patterns;
    doc["warmup_conformity"] = m.warmup_conformity;
    doc["max_enum_bits"] = m.max_enum_bits;
    doc["topologies"] = nlohmann::json::array();
    for (Topology t : m.topologies) doc["topologies"].push_back(to_string(t));
    doc["regimes"] = m.regimes;
    doc["weights"] = m.weights;
    doc["rho"] = m.rhos;
    if (!m.output_dir.empty()) doc["output_dir"] = m.output_dir;
    return doc;
}

}  // namespace orgsim
