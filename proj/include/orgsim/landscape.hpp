#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "orgsim/common.hpp"
#include "orgsim/interaction.hpp"

namespace orgsim {

// Per-task contribution tables plus the enumerated global optimum used for
// normalization. Table rows are indexed by the joint configuration of the
// task's own bit (most significant) and its coupled decisions in ascending
// global task order.
struct LandscapeSet {
    double rho = 0.0;
    int row_bits = 0;
    std::vector<double> values;  // tasks * rows, task-major
    double global_max = 0.0;
    DecisionVector global_argmax = 0;

    std::size_t rows() const { return std::size_t{1} << row_bits; }
    double value(int task, std::size_t row) const { return values[task * rows() + row]; }
};

inline std::size_t contribution_row(const InteractionMatrix& im, DecisionVector x, int task) {
    const auto& cols = im.coupled[task];
    std::size_t row = ((x >> task) & 1ULL) << cols.size();
    for (std::size_t t = 0; t < cols.size(); ++t)
        row |= ((x >> cols[t]) & 1ULL) << (cols.size() - 1 - t);
    return row;
}

inline double contribution(const LandscapeSet& ls, const InteractionMatrix& im, DecisionVector x, int task) {
    return ls.value(task, contribution_row(im, x, task));
}

inline double agent_performance(const LandscapeSet& ls, const InteractionMatrix& im, DecisionVector x, int agent) {
    double sum = 0.0;
    for (int i = agent * im.n; i < (agent + 1) * im.n; ++i)
        sum += contribution(ls, im, x, i);
    return sum / im.n;
}

inline double org_performance(const LandscapeSet& ls, const InteractionMatrix& im, DecisionVector x) {
    double sum = 0.0;
    for (int p = 0; p < im.agents; ++p)
        sum += agent_performance(ls, im, x, p);
    return sum / im.agents;
}

// Draws the contribution tables without touching the global optimum. Values
// at the same within-block position and row index are coupled across agents
// through a Gaussian copula with latent correlation 2*sin(pi*rho/6), which
// yields Pearson correlation rho between the uniform(0,1) marginals.
template <class Rng>
void fill_contribution_tables(LandscapeSet& ls, const InteractionMatrix& im, double rho, Rng& rng) {
    if (rho < 0.0 || rho > 1.0)
        throw ConfigError("rho", "must lie in [0,1], got " + std::to_string(rho));

    ls.rho = rho;
    ls.row_bits = im.row_bits();
    const std::size_t rows = ls.rows();
    ls.values.assign(static_cast<std::size_t>(im.tasks()) * rows, 0.0);

    // rho = 1 must duplicate tables exactly; sin(pi/6) rounds just below 1/2
    const double latent = rho == 1.0 ? 1.0 : 2.0 * std::sin(std::numbers::pi * rho / 6.0);
    const double w_shared = std::sqrt(latent);
    const double w_local = std::sqrt(1.0 - latent);
    std::normal_distribution<double> normal;

    for (int pos = 0; pos < im.n; ++pos) {
        for (std::size_t row = 0; row < rows; ++row) {
            const double shared = normal(rng);
            for (int p = 0; p < im.agents; ++p) {
                const double z = w_shared * shared + w_local * normal(rng);
                ls.values[static_cast<std::size_t>(p * im.n + pos) * rows + row] = norm_cdf(z);
            }
        }
    }
}

// Exact maximum of organizational performance over all 2^M decision vectors,
// found with a Gray-code walk that re-evaluates only the contributions
// affected by each single-bit flip. Ties resolve to the lexicographically
// lowest vector.
inline std::pair<double, DecisionVector> enumerate_global_max(const LandscapeSet& ls,
                                                              const InteractionMatrix& im,
                                                              int max_enum_bits = 24) {
    const int m = im.tasks();
    if (m > max_enum_bits)
        throw ConfigError("max_enum_bits", "enumerating 2^" + std::to_string(m) +
                                               " states exceeds the budget of 2^" +
                                               std::to_string(max_enum_bits));

    const std::size_t rows = ls.rows();

    // Flipping decision j changes the table row of every task i with cell
    // (i, j) set; the row index moves by a fixed xor weight.
    struct Affect {
        std::uint32_t task;
        std::uint32_t weight;
    };
    std::vector<std::vector<Affect>> by_column(m);
    for (int i = 0; i < m; ++i) {
        const auto& cols = im.coupled[i];
        by_column[i].push_back({static_cast<std::uint32_t>(i), 1u << cols.size()});
        for (std::size_t t = 0; t < cols.size(); ++t)
            by_column[cols[t]].push_back(
                {static_cast<std::uint32_t>(i), 1u << (cols.size() - 1 - t)});
    }

    std::vector<std::uint32_t> row(m, 0);
    std::vector<double> val(m);
    long double sum = 0.0L;
    for (int i = 0; i < m; ++i) {
        val[i] = ls.value(i, 0);
        sum += val[i];
    }

    DecisionVector state = 0;
    DecisionVector best_state = 0;
    long double best_sum = sum;

    const std::uint64_t count = 1ULL << m;
    for (std::uint64_t step = 1; step < count; ++step) {
        const int j = std::countr_zero(step);  // Gray-code flip position
        state ^= 1ULL << j;
        for (const auto& a : by_column[j]) {
            row[a.task] ^= a.weight;
            const double nv = ls.values[a.task * rows + row[a.task]];
            sum += static_cast<long double>(nv) - val[a.task];
            val[a.task] = nv;
        }
        if (sum > best_sum) {
            best_sum = sum;
            best_state = state;
        } else if (sum == best_sum && lex_less(state, best_state)) {
            best_state = state;
        }
    }

    return {org_performance(ls, im, best_state), best_state};
}

template <class Rng>
LandscapeSet generate_landscape_set(const InteractionMatrix& im, double rho, Rng& rng,
                                    int max_enum_bits = 24) {
    LandscapeSet ls;
    fill_contribution_tables(ls, im, rho, rng);
    const auto [max_value, argmax] = enumerate_global_max(ls, im, max_enum_bits);
    ls.global_max = max_value;
    ls.global_argmax = argmax;
    return ls;
}

}  // namespace orgsim
