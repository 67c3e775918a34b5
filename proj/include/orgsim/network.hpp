#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "orgsim/common.hpp"

namespace orgsim {

enum class Topology { Star, Ring, Cycle, Line };

inline const char* to_string(Topology t) {
    switch (t) {
        case Topology::Star: return "star";
        case Topology::Ring: return "ring";
        case Topology::Cycle: return "cycle";
        case Topology::Line: return "line";
    }
    return "?";
}

inline Topology topology_from_string(const std::string& name) {
    if (name == "star") return Topology::Star;
    if (name == "ring") return Topology::Ring;
    if (name == "cycle") return Topology::Cycle;
    if (name == "line") return Topology::Line;
    throw ConfigError("topology", "unknown topology '" + name + "' (expected star|ring|cycle|line)");
}

// Directed information-sharing structure. Edge (p, q) means p sends its
// decisions to q every period. Agents are 0-based; agent 0 is the Star hub
// and the head of the Line.
//
// Star and Line transfer knowledge one way (the hub and the head receive
// nothing). Ring couples every agent mutually with both neighbours
// (2P edges); Cycle is the single directed loop 0 -> 1 -> ... -> P-1 -> 0,
// where mutuality is only indirect, around the loop.
struct Network {
    Topology kind = Topology::Star;
    int agents = 0;
    std::vector<std::pair<int, int>> edges;  // (sender, receiver)
    std::vector<std::vector<int>> in_nb;     // ascending per receiver
    std::vector<std::vector<int>> out_nb;    // ascending per sender
};

inline Network build_network(Topology kind, int agents) {
    if (agents < 3)
        throw ConfigError("P", "need at least 3 agents, got " + std::to_string(agents));

    Network net;
    net.kind = kind;
    net.agents = agents;
    auto add = [&](int s, int r) { net.edges.emplace_back(s, r); };

    switch (kind) {
        case Topology::Star:
            for (int q = 1; q < agents; ++q) add(0, q);
            break;
        case Topology::Line:
            for (int q = 1; q < agents; ++q) add(q - 1, q);
            break;
        case Topology::Ring:
            for (int p = 0; p < agents; ++p) {
                add(p, (p + 1) % agents);
                add((p + 1) % agents, p);
            }
            break;
        case Topology::Cycle:
            for (int p = 0; p < agents; ++p) add(p, (p + 1) % agents);
            break;
    }

    net.in_nb.resize(agents);
    net.out_nb.resize(agents);
    for (auto [s, r] : net.edges) {
        net.in_nb[r].push_back(s);
        net.out_nb[s].push_back(r);
    }
    for (auto& v : net.in_nb) std::sort(v.begin(), v.end());
    for (auto& v : net.out_nb) std::sort(v.begin(), v.end());
    return net;
}

inline const std::vector<int>& in_neighbors(const Network& net, int agent) {
    return net.in_nb.at(agent);
}

}  // namespace orgsim
