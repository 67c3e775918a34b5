#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "orgsim/common.hpp"

namespace orgsim {

// M x M boolean coupling structure over tasks. Cell (i, j) true means the
// contribution of task i depends on decision j. Tasks are partitioned into
// P contiguous blocks of N; block p belongs to agent p.
struct InteractionMatrix {
    int agents = 0;  // P
    int n = 0;       // tasks per agent
    int k = 0;       // internal couplings per task
    int c = 0;       // couplings per coupled agent
    int s = 0;       // number of coupled agents

    std::vector<std::uint64_t> depends;               // row bitmasks
    std::vector<std::vector<std::uint16_t>> coupled;  // per task: coupled columns, ascending, own excluded

    int tasks() const { return agents * n; }
    int row_bits() const { return 1 + k + c * s; }
    std::size_t table_rows() const { return std::size_t{1} << row_bits(); }
    bool cell(int i, int j) const { return ((depends[i] >> j) & 1ULL) != 0; }
};

namespace detail {

// Random permutation of {0..n-1} with perm[r] never in a blocked cell.
// Rejection-samples uniform permutations first; falls back to a randomized
// backtracking matching, which always succeeds when a valid assignment exists.
template <class Blocked, class Rng>
std::vector<int> constrained_permutation(int n, Blocked blocked, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::shuffle(perm.begin(), perm.end(), rng);
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) ok = !blocked(r, perm[r]);
        if (ok) return perm;
    }

    std::vector<std::vector<int>> choices(n);
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col)
            if (!blocked(r, col)) choices[r].push_back(col);
        std::shuffle(choices[r].begin(), choices[r].end(), rng);
    }
    std::fill(perm.begin(), perm.end(), -1);
    std::vector<bool> used(n, false);
    std::vector<int> cursor(n, 0);
    int r = 0;
    while (r < n) {
        bool advanced = false;
        while (cursor[r] < static_cast<int>(choices[r].size())) {
            const int col = choices[r][cursor[r]++];
            if (!used[col]) {
                perm[r] = col;
                used[col] = true;
                advanced = true;
                break;
            }
        }
        if (advanced) {
            ++r;
            continue;
        }
        cursor[r] = 0;
        if (r == 0) throw std::logic_error("constrained_permutation: no feasible assignment");
        --r;
        used[perm[r]] = false;
        perm[r] = -1;
    }
    return perm;
}

// n x n 0/1 pattern whose row and column sums all equal `degree`, built as a
// superposition of `degree` pairwise disjoint permutation matrices.
template <class Rng>
std::vector<std::uint32_t> regular_pattern(int n, int degree, bool allow_diagonal, Rng& rng) {
    std::vector<std::uint32_t> rows(n, 0);
    for (int t = 0; t < degree; ++t) {
        auto blocked = [&](int r, int col) {
            if (!allow_diagonal && r == col) return true;
            return ((rows[r] >> col) & 1u) != 0;
        };
        const std::vector<int> perm = constrained_permutation(n, blocked, rng);
        for (int r = 0; r < n; ++r) rows[r] |= 1u << perm[r];
    }
    return rows;
}

}  // namespace detail

// Builds a coupling structure where every task depends on itself, exactly K
// tasks of its own agent and C tasks of each of S other agents, and every
// row and column sum equals 1 + K + C*S.
//
// With homologous_patterns (the default) the within-block pattern and the
// per-slot cross-block patterns are drawn once and replicated across agents,
// so tables at the same within-block position have the same shape everywhere;
// a random S-regular directed graph over the agents decides which foreign
// blocks each agent references.
template <class Rng>
InteractionMatrix build_interaction_matrix(int agents, int n, int k, int c, int s, Rng& rng,
                                           bool homologous_patterns = true) {
    if (agents < 1) throw ConfigError("P", "need at least 1 agent");
    if (n < 1) throw ConfigError("N", "need at least 1 task per agent");
    if (agents * n > 64) throw ConfigError("M", "at most 64 tasks supported, got " + std::to_string(agents * n));
    if (k < 0 || k > n - 1)
        throw ConfigError("K", "must satisfy 0 <= K <= N-1, got K=" + std::to_string(k));
    if (c < 0 || c > n)
        throw ConfigError("C", "must satisfy 0 <= C <= N, got C=" + std::to_string(c));
    if (s < 0 || s > agents - 1)
        throw ConfigError("S", "must satisfy 0 <= S <= P-1, got S=" + std::to_string(s));

    InteractionMatrix im;
    im.agents = agents;
    im.n = n;
    im.k = k;
    im.c = c;
    im.s = s;
    const int m = im.tasks();
    im.depends.assign(m, 0);
    for (int i = 0; i < m; ++i) im.depends[i] |= 1ULL << i;

    if (k > 0) {
        std::vector<std::uint32_t> shared;
        if (homologous_patterns) shared = detail::regular_pattern(n, k, false, rng);
        for (int p = 0; p < agents; ++p) {
            const auto pat = homologous_patterns ? shared : detail::regular_pattern(n, k, false, rng);
            for (int r = 0; r < n; ++r)
                im.depends[p * n + r] |= static_cast<std::uint64_t>(pat[r]) << (p * n);
        }
    }

    if (c > 0 && s > 0) {
        // Block-level graph: each agent references S others and is referenced by S.
        const auto block_graph = detail::regular_pattern(agents, s, false, rng);
        std::vector<std::vector<std::uint32_t>> slot_patterns(s);
        if (homologous_patterns)
            for (int slot = 0; slot < s; ++slot)
                slot_patterns[slot] = detail::regular_pattern(n, c, true, rng);

        for (int p = 0; p < agents; ++p) {
            int slot = 0;
            for (int q = 0; q < agents; ++q) {
                if (((block_graph[p] >> q) & 1u) == 0) continue;
                const auto pat = homologous_patterns ? slot_patterns[slot]
                                                     : detail::regular_pattern(n, c, true, rng);
                for (int r = 0; r < n; ++r)
                    im.depends[p * n + r] |= static_cast<std::uint64_t>(pat[r]) << (q * n);
                ++slot;
            }
        }
    }

    im.coupled.resize(m);
    for (int i = 0; i < m; ++i) {
        im.coupled[i].reserve(k + c * s);
        for (int j = 0; j < m; ++j)
            if (j != i && im.cell(i, j)) im.coupled[i].push_back(static_cast<std::uint16_t>(j));
    }
    return im;
}

}  // namespace orgsim
