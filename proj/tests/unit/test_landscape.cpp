#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <random>

#include "helpers.hpp"
#include "orgsim/interaction.hpp"
#include "orgsim/landscape.hpp"
#include "orgsim/landscape_io.hpp"

using namespace orgsim;

namespace {

// Homologous (agent, agent) value pairs pooled over positions and rows.
void collect_pairs(const InteractionMatrix& im, const LandscapeSet& ls, std::vector<double>& xs,
                   std::vector<double>& ys) {
    const std::size_t rows = ls.rows();
    for (int pos = 0; pos < im.n; ++pos)
        for (std::size_t r = 0; r < rows; ++r)
            for (int p = 0; p < im.agents; ++p)
                for (int q = p + 1; q < im.agents; ++q) {
                    xs.push_back(ls.value(p * im.n + pos, r));
                    ys.push_back(ls.value(q * im.n + pos, r));
                }
}

}  // namespace

TEST_CASE("perfect correlation duplicates homologous tables") {
    std::mt19937_64 rng(11);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 1.0, rng);
    for (int pos = 0; pos < 4; ++pos)
        for (std::size_t r = 0; r < ls.rows(); ++r)
            for (int p = 1; p < 5; ++p)
                REQUIRE(ls.value(p * 4 + pos, r) == ls.value(pos, r));
}

TEST_CASE("zero correlation gives independent homologous values") {
    std::mt19937_64 rng(12);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    std::vector<double> xs, ys;
    while (xs.size() < 20000) {
        LandscapeSet ls;
        fill_contribution_tables(ls, im, 0.0, rng);
        collect_pairs(im, ls, xs, ys);
    }
    REQUIRE(std::abs(testutil::pearson(xs, ys)) < 0.03);
}

TEST_CASE("benchmark correlation 0.9 is matched within 0.02") {
    std::mt19937_64 rng(13);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    std::vector<double> xs, ys;
    while (xs.size() < 100000) {
        LandscapeSet ls;
        fill_contribution_tables(ls, im, 0.9, rng);
        collect_pairs(im, ls, xs, ys);
    }
    REQUIRE(testutil::pearson(xs, ys) == Catch::Approx(0.9).margin(0.02));
}

TEST_CASE("contribution marginals are uniform") {
    std::mt19937_64 rng(14);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    std::vector<double> pooled;
    for (int set = 0; set < 150; ++set) {
        LandscapeSet ls;
        fill_contribution_tables(ls, im, 0.9, rng);
        pooled.insert(pooled.end(), ls.values.begin(), ls.values.end());
        for (double v : ls.values) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
    REQUIRE(pooled.size() >= 100000);
    REQUIRE(testutil::ks_uniform(std::move(pooled)) < 0.01);
}

TEST_CASE("table rows count the joint coupled configurations") {
    std::mt19937_64 rng(15);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 0.9, rng);
    REQUIRE(ls.rows() == (1u << (1 + 2 + 2 * 2)));
    REQUIRE(ls.values.size() == 20 * ls.rows());
}

TEST_CASE("contribution depends only on the own bit without couplings") {
    std::mt19937_64 rng(16);
    const auto im = build_interaction_matrix(5, 4, 0, 0, 0, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 0.5, rng);
    std::mt19937_64 states(1);
    for (int trial = 0; trial < 50; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        for (int i = 0; i < 20; ++i) {
            const double base = contribution(ls, im, x, i);
            for (int j = 0; j < 20; ++j)
                if (j != i) REQUIRE(contribution(ls, im, x ^ (1ULL << j), i) == base);
        }
    }
}

TEST_CASE("contribution is invariant under flips of uncoupled bits") {
    std::mt19937_64 rng(17);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 0.9, rng);
    std::mt19937_64 states(2);
    for (int trial = 0; trial < 500; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        const int i = static_cast<int>(states() % 20);
        const int j = static_cast<int>(states() % 20);
        if (im.cell(i, j)) continue;
        REQUIRE(contribution(ls, im, x ^ (1ULL << j), i) == contribution(ls, im, x, i));
    }
}

TEST_CASE("table row lookup matches an independent index derivation") {
    std::mt19937_64 rng(18);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 0.9, rng);

    // re-derive the row straight from the matrix cells: own bit first, then
    // coupled bits by ascending global index
    auto oracle_row = [&](DecisionVector x, int i) {
        std::vector<int> cols;
        for (int j = 0; j < im.tasks(); ++j)
            if (j != i && im.cell(i, j)) cols.push_back(j);
        std::size_t row = (x >> i) & 1ULL;
        for (int j : cols) row = (row << 1) | ((x >> j) & 1ULL);
        return row;
    };

    std::mt19937_64 states(3);
    for (int trial = 0; trial < 100; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        for (int i = 0; i < 20; ++i)
            REQUIRE(contribution(ls, im, x, i) == ls.value(i, oracle_row(x, i)));
    }
}

TEST_CASE("agent performance is the mean of its block contributions") {
    std::mt19937_64 rng(19);
    const auto im = build_interaction_matrix(5, 4, 0, 0, 0, rng);

    const auto constant = testutil::constant_landscape(
        im, std::vector<double>(20, 0.5));
    REQUIRE(agent_performance(constant, im, 0, 2) == Catch::Approx(0.5));

    std::vector<double> per_task(20, 0.0);
    per_task[0] = 0.2;
    per_task[1] = 0.4;
    per_task[2] = 0.6;
    per_task[3] = 0.8;
    const auto mixed = testutil::constant_landscape(im, per_task);
    REQUIRE(agent_performance(mixed, im, 0, 0) == Catch::Approx(0.5));

    // direct recomputation on random states of a generated landscape
    std::mt19937_64 rng2(20);
    const auto im2 = build_interaction_matrix(5, 4, 2, 2, 2, rng2);
    LandscapeSet ls2;
    fill_contribution_tables(ls2, im2, 0.9, rng2);
    std::mt19937_64 states(4);
    for (int trial = 0; trial < 100; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        for (int p = 0; p < 5; ++p) {
            double sum = 0.0;
            for (int i = p * 4; i < (p + 1) * 4; ++i) sum += contribution(ls2, im2, x, i);
            REQUIRE(agent_performance(ls2, im2, x, p) == Catch::Approx(sum / 4).epsilon(1e-14));
        }
    }
}

TEST_CASE("organizational performance averages the agents") {
    std::mt19937_64 rng(21);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    const auto ls = generate_landscape_set(im, 0.9, rng);

    std::mt19937_64 states(5);
    for (int trial = 0; trial < 50; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        double task_mean = 0.0;
        for (int i = 0; i < 20; ++i) task_mean += contribution(ls, im, x, i);
        task_mean /= 20;
        REQUIRE(org_performance(ls, im, x) == Catch::Approx(task_mean).epsilon(1e-12));
    }
    REQUIRE(org_performance(ls, im, ls.global_argmax) == ls.global_max);
}

TEST_CASE("tiny landscape maximum agrees with exhaustive search") {
    std::mt19937_64 rng(22);
    const auto im = build_interaction_matrix(1, 2, 1, 0, 0, rng);  // M = 2
    LandscapeSet ls;
    ls.rho = 0.0;
    ls.row_bits = im.row_bits();
    ls.values = {0.3, 0.9, 0.1, 0.6,   // task 0 rows
                 0.2, 0.8, 0.7, 0.4};  // task 1 rows
    const auto [mx, arg] = enumerate_global_max(ls, im);

    double best = -1.0;
    DecisionVector best_x = 0;
    for (DecisionVector x = 0; x < 4; ++x) {
        const double v = org_performance(ls, im, x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    REQUIRE(mx == best);
    REQUIRE(arg == best_x);
}

TEST_CASE("enumerated maximum dominates random states") {
    std::mt19937_64 rng(23);
    const auto im = build_interaction_matrix(5, 4, 3, 0, 0, rng);
    const auto ls = generate_landscape_set(im, 0.9, rng);
    std::mt19937_64 states(6);
    for (int trial = 0; trial < 1000; ++trial) {
        const DecisionVector x = states() & bit_mask(20);
        REQUIRE(org_performance(ls, im, x) <= ls.global_max);
    }
}

TEST_CASE("constant tables make every state optimal and ties resolve to all-zeros") {
    std::mt19937_64 rng(24);
    const auto im = build_interaction_matrix(5, 4, 2, 2, 2, rng);
    const auto ls = testutil::constant_landscape(im, std::vector<double>(20, 0.7));
    REQUIRE(ls.global_max == Catch::Approx(0.7).epsilon(1e-14));
    REQUIRE(ls.global_argmax == 0);
}

TEST_CASE("enumeration refuses states beyond the budget") {
    std::mt19937_64 rng(25);
    const auto im = build_interaction_matrix(5, 4, 3, 0, 0, rng);
    LandscapeSet ls;
    fill_contribution_tables(ls, im, 0.9, rng);
    REQUIRE_THROWS_AS(enumerate_global_max(ls, im, 10), ConfigError);
}

TEST_CASE("identical seeds produce identical landscapes") {
    std::mt19937_64 a(31), b(31);
    const auto im1 = build_interaction_matrix(5, 4, 2, 2, 2, a);
    const auto im2 = build_interaction_matrix(5, 4, 2, 2, 2, b);
    const auto ls1 = generate_landscape_set(im1, 0.9, a);
    const auto ls2 = generate_landscape_set(im2, 0.9, b);
    REQUIRE(ls1.values == ls2.values);
    REQUIRE(ls1.global_max == ls2.global_max);
    REQUIRE(ls1.global_argmax == ls2.global_argmax);
}

TEST_CASE("landscape fixtures round-trip through the binary format") {
    const std::uint64_t seed = 777;
    std::mt19937_64 rng(seed);
    const auto im = build_interaction_matrix(3, 3, 2, 1, 1, rng);
    const auto ls = generate_landscape_set(im, 0.6, rng);

    const auto path = (std::filesystem::temp_directory_path() / "orgsim_fixture.bin").string();
    dump_landscape(path, im, ls, seed);
    const auto loaded = load_landscape(path);
    std::filesystem::remove(path);

    REQUIRE(loaded.seed == seed);
    REQUIRE(loaded.im.depends == im.depends);
    REQUIRE(loaded.ls.values == ls.values);
    REQUIRE(loaded.ls.rho == ls.rho);
    REQUIRE(loaded.ls.global_max == ls.global_max);
    REQUIRE(loaded.ls.global_argmax == ls.global_argmax);
}
