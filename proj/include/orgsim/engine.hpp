#pragma once

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "orgsim/agent.hpp"
#include "orgsim/common.hpp"
#include "orgsim/interaction.hpp"
#include "orgsim/landscape.hpp"
#include "orgsim/metrics.hpp"
#include "orgsim/network.hpp"

namespace orgsim {

struct ScenarioConfig {
    int agents = 5;          // P
    int n = 4;               // N, tasks per agent
    int k = 3;               // internal couplings
    int c = 0;               // couplings per coupled agent
    int s = 0;               // coupled agents
    double rho = 0.9;        // cross-agent landscape correlation
    int t_memory = 50;       // T_L, memory span in periods
    int periods = 500;       // T
    int repetitions = 1000;  // R
    double alpha = 0.5;      // performance weight
    double beta = 0.5;       // conformity weight
    Topology topology = Topology::Star;
    std::uint64_t seed = 42;  // master seed

    bool homologous_patterns = true;  // replicate coupling patterns across agents
    bool warmup_conformity = true;    // conformity pinned to 0 while t <= T_L
    int max_enum_bits = 24;           // enumeration budget for the global optimum

    int tasks() const { return agents * n; }

    void validate() const {
        if (agents < 3) throw ConfigError("P", "need at least 3 agents, got " + std::to_string(agents));
        if (n < 1 || n > 16) throw ConfigError("N", "must lie in [1,16], got " + std::to_string(n));
        if (k < 0 || k > n - 1) throw ConfigError("K", "must satisfy 0 <= K <= N-1, got K=" + std::to_string(k));
        if (c < 0 || c > n) throw ConfigError("C", "must satisfy 0 <= C <= N, got C=" + std::to_string(c));
        if (s < 0 || s > agents - 1) throw ConfigError("S", "must satisfy 0 <= S <= P-1, got S=" + std::to_string(s));
        if (rho < 0.0 || rho > 1.0) throw ConfigError("rho", "must lie in [0,1]");
        if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-9)
            throw ConfigError("weights", "must be nonnegative and sum to 1");
        if (t_memory < 0) throw ConfigError("T_L", "must be nonnegative");
        if (periods < 0) throw ConfigError("T", "must be nonnegative");
        if (repetitions < 1) throw ConfigError("R", "need at least 1 repetition");
        if (max_enum_bits < 1 || max_enum_bits > 30)
            throw ConfigError("max_enum_bits", "must lie in [1,30]");
        if (tasks() > max_enum_bits)
            throw ConfigError("M", "M=" + std::to_string(tasks()) +
                                       " exceeds the enumeration budget of 2^" +
                                       std::to_string(max_enum_bits) + " states");
    }
};

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<double> performance;  // normalized by the landscape's global max, t = 1..T
    std::vector<double> synchrony;
    DecisionVector final_state = 0;
};

struct ExperimentResult {
    ScenarioConfig config;
    std::vector<double> mean_performance;
    std::vector<double> se_performance;
    std::vector<double> mean_synchrony;
    std::vector<double> se_synchrony;
    // Dispersion of final-period performance across runs; a quick adequacy
    // check for the chosen R.
    double cv_terminal_performance = 0.0;
};

inline std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index) {
    return splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(run_index + 1));
}

inline std::uint64_t agent_period_seed(std::uint64_t run_seed, int agent, int period) {
    const std::uint64_t h = splitmix64(run_seed ^ (0xd1b54a32d192ed03ULL + static_cast<std::uint64_t>(agent)));
    return splitmix64(h ^ (0x2545f4914f6cdd1dULL * static_cast<std::uint64_t>(period)));
}

// One simulation run, stepped a period at a time. Exposes enough state for
// invariant checks; run_once is the plain driver on top.
class Simulation {
public:
    Simulation(const ScenarioConfig& cfg, std::uint64_t run_seed)
        : cfg_(cfg), run_seed_(run_seed) {
        cfg.validate();
        std::mt19937_64 rng(run_seed);
        im_ = build_interaction_matrix(cfg.agents, cfg.n, cfg.k, cfg.c, cfg.s, rng,
                                       cfg.homologous_patterns);
        ls_ = generate_landscape_set(im_, cfg.rho, rng, cfg.max_enum_bits);
        net_ = build_network(cfg.topology, cfg.agents);

        x_ = static_cast<DecisionVector>(rng()) & bit_mask(cfg.tasks());
        agents_.resize(cfg.agents);
        for (int p = 0; p < cfg.agents; ++p) {
            agents_[p].index = p;
            agents_[p].n = cfg.n;
            agents_[p].own_bits = block_bits(x_, p, cfg.n);
            agents_[p].alpha = cfg.alpha;
            agents_[p].beta = cfg.beta;
        }
        committed_.resize(cfg.agents);
    }

    // Advances one period: every agent proposes a single flip and decides
    // against the frozen previous-period context, all decisions commit
    // simultaneously, then the new sub-vectors travel along the network and
    // receivers update their memories.
    void step(std::span<const int> eval_order = {}) {
        const int t = ++period_;
        auto agent_at = [&](int idx) { return eval_order.empty() ? idx : eval_order[idx]; };

        for (int idx = 0; idx < cfg_.agents; ++idx) {
            const int p = agent_at(idx);
            AgentState& a = agents_[p];
            SplitMix64 flip_rng(agent_period_seed(run_seed_, p, t));
            const std::uint32_t proposal = propose(a, flip_rng);
            committed_[p] = decide(a, im_, ls_, proposal, x_, t, cfg_.t_memory,
                                   cfg_.warmup_conformity);
        }
        for (int p = 0; p < cfg_.agents; ++p) {
            x_ = with_block(x_, p, cfg_.n, committed_[p]);
            agents_[p].own_bits = committed_[p];
        }

        std::vector<PeerDecision> shared;
        for (int idx = 0; idx < cfg_.agents; ++idx) {
            const int q = agent_at(idx);
            shared.clear();
            for (int sender : net_.in_nb[q]) shared.push_back({sender, committed_[sender]});
            observe(agents_[q], shared, t, cfg_.t_memory);
        }
    }

    int period() const { return period_; }
    DecisionVector state() const { return x_; }
    const AgentState& agent(int p) const { return agents_.at(p); }
    const InteractionMatrix& interaction() const { return im_; }
    const LandscapeSet& landscape() const { return ls_; }
    const Network& network() const { return net_; }

    double current_performance() const { return normalized_performance(x_, im_, ls_); }
    double current_synchrony() const { return synchrony(x_, cfg_.agents, cfg_.n); }

private:
    ScenarioConfig cfg_;
    std::uint64_t run_seed_;
    InteractionMatrix im_;
    LandscapeSet ls_;
    Network net_;
    DecisionVector x_ = 0;
    std::vector<AgentState> agents_;
    std::vector<std::uint32_t> committed_;
    int period_ = 0;
};

namespace detail {

inline RunResult run_once_impl(const ScenarioConfig& cfg, std::uint64_t run_seed,
                               std::span<const int> eval_order,
                               std::vector<DecisionVector>* trace = nullptr) {
    Simulation sim(cfg, run_seed);
    RunResult out;
    out.seed = run_seed;
    out.performance.reserve(cfg.periods);
    out.synchrony.reserve(cfg.periods);
    for (int t = 1; t <= cfg.periods; ++t) {
        sim.step(eval_order);
        out.performance.push_back(sim.current_performance());
        out.synchrony.push_back(sim.current_synchrony());
        if (trace) trace->push_back(sim.state());
    }
    out.final_state = sim.state();
    return out;
}

}  // namespace detail

inline RunResult run_once(const ScenarioConfig& cfg, std::uint64_t run_seed) {
    return detail::run_once_impl(cfg, run_seed, {});
}

// R repetitions with sub-seeds split off the master seed, aggregated in run
// order so the result does not depend on scheduling or worker count.
inline ExperimentResult run_experiment(const ScenarioConfig& cfg, int workers = 0) {
    cfg.validate();
    const int total = cfg.repetitions;
    std::vector<RunResult> runs(total);

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, total);

    if (workers == 1) {
        for (int r = 0; r < total; ++r)
            runs[r] = run_once(cfg, derive_run_seed(cfg.seed, r));
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (int r = next.fetch_add(1); r < total; r = next.fetch_add(1))
                        runs[r] = run_once(cfg, derive_run_seed(cfg.seed, r));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    ExperimentResult res;
    res.config = cfg;
    const int T = cfg.periods;
    res.mean_performance.assign(T, 0.0);
    res.se_performance.assign(T, 0.0);
    res.mean_synchrony.assign(T, 0.0);
    res.se_synchrony.assign(T, 0.0);

    for (int t = 0; t < T; ++t) {
        double sum_p = 0.0, sum_s = 0.0;
        for (int r = 0; r < total; ++r) {
            sum_p += runs[r].performance[t];
            sum_s += runs[r].synchrony[t];
        }
        const double mean_p = sum_p / total;
        const double mean_s = sum_s / total;
        res.mean_performance[t] = mean_p;
        res.mean_synchrony[t] = mean_s;
        if (total > 1) {
            double var_p = 0.0, var_s = 0.0;
            for (int r = 0; r < total; ++r) {
                const double dp = runs[r].performance[t] - mean_p;
                const double ds = runs[r].synchrony[t] - mean_s;
                var_p += dp * dp;
                var_s += ds * ds;
            }
            var_p /= (total - 1);
            var_s /= (total - 1);
            res.se_performance[t] = std::sqrt(var_p / total);
            res.se_synchrony[t] = std::sqrt(var_s / total);
        }
    }

    if (T > 0) {
        const double mean = res.mean_performance[T - 1];
        if (total > 1 && mean != 0.0) {
            double var = 0.0;
            for (int r = 0; r < total; ++r) {
                const double d = runs[r].performance[T - 1] - mean;
                var += d * d;
            }
            res.cv_terminal_performance = std::sqrt(var / (total - 1)) / mean;
        }
    }
    return res;
}

}  // namespace orgsim
