// Smallest useful example: one experiment per topology at reduced scale,
// printing the terminal synchrony and normalized performance.

#include <cstdio>

#include "orgsim/orgsim.hpp"

int main() {
    using namespace orgsim;

    ScenarioConfig cfg;
    cfg.periods = 200;
    cfg.repetitions = 50;
    cfg.alpha = 0.5;
    cfg.beta = 0.5;

    std::printf("%-6s %12s %12s\n", "net", "synchrony", "performance");
    for (Topology topo : {Topology::Star, Topology::Ring, Topology::Cycle, Topology::Line}) {
        cfg.topology = topo;
        const ExperimentResult res = run_experiment(cfg);
        std::printf("%-6s %12.4f %12.4f\n", to_string(topo), res.mean_synchrony.back(),
                    res.mean_performance.back());
    }
    return 0;
}
