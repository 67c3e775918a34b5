#pragma once

#include <bit>
#include <stdexcept>

#include "orgsim/common.hpp"
#include "orgsim/landscape.hpp"

namespace orgsim {

inline int hamming(std::uint64_t u, int len_u, std::uint64_t v, int len_v) {
    if (len_u != len_v)
        throw std::invalid_argument("hamming: length mismatch (" + std::to_string(len_u) +
                                    " vs " + std::to_string(len_v) + ")");
    return std::popcount((u ^ v) & bit_mask(len_u));
}

// Sum of pairwise Hamming distances between the P agent sub-vectors.
inline int asynchrony(DecisionVector x, int agents, int n) {
    int total = 0;
    for (int p = 0; p < agents; ++p) {
        const std::uint32_t bp = block_bits(x, p, n);
        for (int q = p + 1; q < agents; ++q)
            total += std::popcount(bp ^ block_bits(x, q, n));
    }
    return total;
}

// Each bit position contributes at most floor(P/2)*ceil(P/2) discordant pairs.
inline int max_asynchrony(int agents, int n) {
    return n * (agents / 2) * ((agents + 1) / 2);
}

inline double synchrony(DecisionVector x, int agents, int n) {
    return 1.0 - static_cast<double>(asynchrony(x, agents, n)) /
                     static_cast<double>(max_asynchrony(agents, n));
}

inline double normalized_performance(DecisionVector x, const InteractionMatrix& im,
                                     const LandscapeSet& ls) {
    if (!(ls.global_max > 0.0))
        throw std::domain_error("normalized_performance: degenerate landscape, global maximum is zero");
    return org_performance(ls, im, x) / ls.global_max;
}

}  // namespace orgsim
