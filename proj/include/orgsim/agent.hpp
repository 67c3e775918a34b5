#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <stdexcept>

#include "orgsim/common.hpp"
#include "orgsim/landscape.hpp"

namespace orgsim {

struct MemoryEntry {
    std::uint32_t bits;  // an observed N-bit peer decision
    int period;          // when it was received
};

struct PeerDecision {
    int sender;
    std::uint32_t bits;
};

// One agent: its N-bit decision sub-vector, a bounded memory of observed peer
// decisions, and the preference weights (alpha on own performance, beta on
// conformity; alpha + beta = 1).
struct AgentState {
    int index = 0;
    int n = 0;
    std::uint32_t own_bits = 0;
    std::deque<MemoryEntry> memory;  // front = oldest
    double alpha = 0.5;
    double beta = 0.5;
};

// Appends the decisions shared at period t, then forgets every entry whose
// age reached t_memory.
inline void observe(AgentState& a, std::span<const PeerDecision> shared, int t, int t_memory) {
    for (const auto& d : shared) {
        if (a.n < 32 && (d.bits >> a.n) != 0)
            throw std::invalid_argument("observe: shared vector wider than " +
                                        std::to_string(a.n) + " bits");
        a.memory.push_back({d.bits, t});
    }
    while (!a.memory.empty() && t - a.memory.front().period >= t_memory)
        a.memory.pop_front();
}

// Mean fraction of bits of `candidate` matching the remembered peer
// decisions. Zero while t <= t_memory (warm-up) and whenever the memory is
// empty, which leaves agents with no in-neighbors as pure performance
// seekers.
inline double conformity(const AgentState& a, std::uint32_t candidate, int t, int t_memory,
                         bool warmup_zero = true) {
    if (warmup_zero && t <= t_memory) return 0.0;
    if (a.memory.empty()) return 0.0;
    const std::uint32_t mask = static_cast<std::uint32_t>(bit_mask(a.n));
    long matches = 0;
    for (const auto& e : a.memory)
        matches += std::popcount(~(candidate ^ e.bits) & mask);
    return static_cast<double>(matches) /
           (static_cast<double>(a.memory.size()) * static_cast<double>(a.n));
}

// Linear preference over performance and conformity, evaluated with the
// candidate sub-vector substituted into the rest-of-organization context.
inline double utility(const AgentState& a, const InteractionMatrix& im, const LandscapeSet& ls,
                      std::uint32_t candidate, DecisionVector context, int t, int t_memory,
                      bool warmup_zero = true) {
    const DecisionVector x = with_block(context, a.index, a.n, candidate);
    return a.alpha * agent_performance(ls, im, x, a.index) +
           a.beta * conformity(a, candidate, t, t_memory, warmup_zero);
}

// One uniformly chosen bit flipped; never more than one (no long jumps).
template <class Rng>
std::uint32_t propose(const AgentState& a, Rng& rng) {
    const int flip = std::uniform_int_distribution<int>(0, a.n - 1)(rng);
    return a.own_bits ^ (1u << flip);
}

// Keeps the status quo unless the proposal strictly improves utility.
inline std::uint32_t decide(const AgentState& a, const InteractionMatrix& im, const LandscapeSet& ls,
                            std::uint32_t proposal, DecisionVector context, int t, int t_memory,
                            bool warmup_zero = true) {
    const double u_keep = utility(a, im, ls, a.own_bits, context, t, t_memory, warmup_zero);
    const double u_prop = utility(a, im, ls, proposal, context, t, t_memory, warmup_zero);
    return u_prop > u_keep ? proposal : a.own_bits;
}

}  // namespace orgsim
