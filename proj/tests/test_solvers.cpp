#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "balancekit/imbalance.hpp"
#include "balancekit/solver.hpp"
#include "oracles.hpp"

using namespace balancekit;

namespace {

SignedGraph triangle() {
    return SignedGraph(3, {{0, 1, 1.0, EdgeSign::positive},
                           {1, 2, 1.0, EdgeSign::positive},
                           {0, 2, 0.5, EdgeSign::negative}});
}

// Two positive cliques of four, all cross edges negative: the only partition
// with zero imbalance is the planted 2-split.
SignedGraph planted_two_camps() {
    std::vector<Edge> edges;
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) {
            bool same_side = (u < 4) == (v < 4);
            edges.push_back({u, v, same_side ? 1.0 : 0.5,
                             same_side ? EdgeSign::positive : EdgeSign::negative});
        }
    return SignedGraph(8, std::move(edges));
}

SolverConfig quick_config(std::uint64_t seed = 42) {
    SolverConfig c;
    c.max_iterations = 200;
    c.restarts = 2;
    c.rng_seed = seed;
    return c;
}

} // namespace

TEST_SUITE("solver config") {

TEST_CASE("validation") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    SolverConfig bad = c;
    bad.max_iterations = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.perturbation_strength = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.restarts = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.time_budget = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.k_max = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

} // suite

TEST_SUITE("exact solver") {

TEST_CASE("balanced graphs are solved at zero") {
    SignedGraph all_pos(4, {{0, 1, 1.0, EdgeSign::positive},
                            {1, 2, 0.5, EdgeSign::positive},
                            {2, 3, 0.5, EdgeSign::positive}});
    SolveResult r = exact_cc(all_pos);
    CHECK(r.objective == 0.0);
    CHECK(r.proven_optimal);
    CHECK(r.partition == Partition::single_cluster(4));
    CHECK(r.objective_kind == ObjectiveKind::CC);

    SignedGraph hostile(2, {{0, 1, 1.0, EdgeSign::negative}});
    SolveResult s = exact_cc(hostile);
    CHECK(s.objective == 0.0);
    CHECK(s.partition == Partition::singletons(2));
}

TEST_CASE("triangle optimum is the single cluster") {
    SolveResult r = exact_cc(triangle());
    CHECK(r.objective == 0.5);
    CHECK(r.proven_optimal);
    CHECK(r.partition == Partition::single_cluster(3));

    // Enumeration confirms the optimum is unique: the runner-up costs 1.0.
    double runner_up = std::numeric_limits<double>::infinity();
    oracles::for_each_partition(3, [&](const std::vector<int>& a) {
        Partition p(a);
        double obj = imbalance(triangle(), p);
        if (p != r.partition)
            runner_up = std::min(runner_up, obj);
    });
    CHECK(runner_up == 1.0);
}

TEST_CASE("empty graph") {
    SolveResult r = exact_cc(SignedGraph());
    CHECK(r.objective == 0.0);
    CHECK(r.proven_optimal);
    CHECK(r.partition.size() == 0);
}

TEST_CASE("matches enumeration on random graphs, ties included") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 60; ++round) {
        int n = 3 + round % 6;
        SignedGraph g = oracles::random_graph(rng, n, 0.6);
        oracles::BruteForceResult want = oracles::brute_force_cc(g);
        SolveResult got = exact_cc(g);
        REQUIRE(got.proven_optimal);
        CHECK(got.objective == want.objective);
        // Both sides resolve co-optima toward the lexicographically smallest
        // canonical assignment, so the partitions must agree exactly.
        CHECK(got.partition == want.partition);
    }
}

TEST_CASE("time budget returns an honest incumbent") {
    std::mt19937_64 rng(11);
    SignedGraph g = oracles::random_graph(rng, 40, 0.5);
    SolverConfig c;
    c.time_budget = 0.005;
    SolveResult r = exact_cc(g, c);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.elapsed_seconds < 5.0);
    CHECK(r.partition.size() == 40);
    CHECK(r.objective == imbalance(g, r.partition));
}

} // suite

TEST_SUITE("ils cc") {

TEST_CASE("solves balanced graphs to zero") {
    SolveResult r = ils_cc(planted_two_camps(), quick_config());
    CHECK(r.objective == 0.0);
    CHECK(r.proven_optimal);
    CHECK(r.partition.cluster_count() == 2);

    SignedGraph edgeless(5, {});
    SolveResult e = ils_cc(edgeless, quick_config());
    CHECK(e.objective == 0.0);
    CHECK(e.partition.cluster_count() == 1);
}

TEST_CASE("triangle matches the exact optimum") {
    SolveResult r = ils_cc(triangle(), quick_config());
    CHECK(r.objective == 0.5);
    CHECK(r.partition == Partition::single_cluster(3));
}

TEST_CASE("deterministic for a fixed seed") {
    std::mt19937_64 rng(2121);
    SignedGraph g = oracles::random_graph(rng, 18, 0.4);
    SolveResult a = ils_cc(g, quick_config(7));
    SolveResult b = ils_cc(g, quick_config(7));
    CHECK(a.partition == b.partition);
    CHECK(a.objective == b.objective);
    CHECK(a.iterations_used == b.iterations_used);
    CHECK(a.proven_optimal == b.proven_optimal);
}

TEST_CASE("never beats and rarely misses the exact optimum on small graphs") {
    std::mt19937_64 rng(808);
    int hits = 0;
    const int rounds = 30;
    for (int round = 0; round < rounds; ++round) {
        int n = 4 + round % 5;
        SignedGraph g = oracles::random_graph(rng, n, 0.6);
        double optimal = oracles::brute_force_cc(g).objective;
        SolveResult r = ils_cc(g, quick_config(round));
        CHECK(r.objective >= optimal - 1e-9);
        CHECK(r.objective == imbalance(g, r.partition));
        if (r.objective <= optimal + 1e-9)
            ++hits;
    }
    // At these sizes the search space is tiny; expect essentially all hits.
    CHECK(hits == rounds);
}

TEST_CASE("returned partitions are relocation fixed points") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 10; ++round) {
        int n = 5 + round % 6;
        SignedGraph g = oracles::random_graph(rng, n, 0.7);
        SolveResult r = ils_cc(g, quick_config(round));
        std::vector<int> assign = r.partition.assignment();
        int k = r.partition.cluster_count();
        for (int v = 0; v < n; ++v) {
            int home = assign[v];
            for (int c = 0; c <= k; ++c) { // k = open a fresh cluster
                if (c == home)
                    continue;
                std::vector<int> moved = assign;
                moved[v] = c;
                CHECK(imbalance(g, Partition(moved)) >= r.objective - 1e-9);
            }
        }
    }
}

TEST_CASE("tiny time budget still returns a consistent result") {
    std::mt19937_64 rng(13);
    SignedGraph g = oracles::random_graph(rng, 60, 0.3);
    SolverConfig c = quick_config();
    c.time_budget = 1e-6;
    SolveResult r = ils_cc(g, c);
    CHECK(r.partition.size() == 60);
    CHECK(r.objective == imbalance(g, r.partition));
    CHECK(r.elapsed_seconds < 5.0);
}

} // suite

TEST_SUITE("ils rcc") {

TEST_CASE("k_max is required and range checked") {
    SignedGraph g = triangle();
    SolverConfig c = quick_config();
    CHECK_THROWS_AS(ils_rcc(g, c), std::invalid_argument);
    c.k_max = 4;
    CHECK_THROWS_AS(ils_rcc(g, c), std::invalid_argument);
    c.k_max = 0;
    CHECK_THROWS_AS(ils_rcc(g, c), std::invalid_argument);
}

TEST_CASE("internally hostile groups are free") {
    SignedGraph neg_clique(4, {{0, 1, 1.0, EdgeSign::negative},
                               {0, 2, 1.0, EdgeSign::negative},
                               {0, 3, 1.0, EdgeSign::negative},
                               {1, 2, 1.0, EdgeSign::negative},
                               {1, 3, 1.0, EdgeSign::negative},
                               {2, 3, 1.0, EdgeSign::negative}});
    SolverConfig c = quick_config();
    c.k_max = 1;
    SolveResult r = ils_rcc(neg_clique, c);
    CHECK(r.objective == 0.0);
    CHECK(r.objective_kind == ObjectiveKind::RCC);
    CHECK(r.partition == Partition::single_cluster(4));
}

TEST_CASE("triangle under cluster caps") {
    SolverConfig c = quick_config();
    c.k_max = 1;
    SolveResult one = ils_rcc(triangle(), c);
    CHECK(one.objective == 0.5);
    CHECK(one.partition.cluster_count() == 1);

    // With two clusters the negative pair {0,2} can sit together, uniformly
    // positive toward {1}: a perfectly relaxed-balanced split.
    c.k_max = 2;
    SolveResult two = ils_rcc(triangle(), c);
    CHECK(two.objective == 0.0);
    CHECK(two.partition == Partition(std::vector<int>{0, 1, 0}));
}

TEST_CASE("uniform positive bridge costs nothing at k two") {
    SignedGraph bridge(6, {{0, 1, 1.0, EdgeSign::positive},
                           {1, 2, 1.0, EdgeSign::positive},
                           {3, 4, 1.0, EdgeSign::positive},
                           {4, 5, 1.0, EdgeSign::positive},
                           {2, 3, 0.5, EdgeSign::positive},
                           {0, 5, 0.5, EdgeSign::positive}});
    SolverConfig c = quick_config();
    c.k_max = 2;
    SolveResult r = ils_rcc(bridge, c);
    CHECK(r.objective == 0.0);
}

TEST_CASE("matches enumeration for every cap on small graphs") {
    std::mt19937_64 rng(271828);
    for (int round = 0; round < 12; ++round) {
        int n = 4 + round % 4;
        SignedGraph g = oracles::random_graph(rng, n, 0.7);
        double previous = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= n; ++k) {
            double optimal = oracles::brute_force_rcc(g, k).objective;
            SolverConfig c = quick_config(round * 31 + k);
            c.k_max = k;
            SolveResult r = ils_rcc(g, c);
            CHECK(std::abs(r.objective - optimal) <= 1e-9);
            CHECK(r.partition.cluster_count() <= k);
            CHECK(r.objective == relaxed_imbalance(g, r.partition));
            // Larger caps search supersets, so the optimum cannot rise.
            CHECK(optimal <= previous + 1e-12);
            previous = optimal;
        }
    }
}

TEST_CASE("warm starts are validated and never made worse") {
    SignedGraph g = planted_two_camps();
    SolverConfig c = quick_config();
    c.k_max = 3;

    CHECK_THROWS_AS(ils_rcc(g, c, Partition::single_cluster(5)),
                    std::invalid_argument);
    Partition too_many = Partition::singletons(8);
    CHECK_THROWS_AS(ils_rcc(g, c, too_many), std::invalid_argument);

    Partition warm(std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
    SolveResult r = ils_rcc(g, c, warm);
    CHECK(r.objective <= relaxed_imbalance(g, warm));
}

TEST_CASE("rcc fixed points respect the cluster cap") {
    std::mt19937_64 rng(979);
    for (int round = 0; round < 8; ++round) {
        int n = 5 + round % 4;
        SignedGraph g = oracles::random_graph(rng, n, 0.7);
        int k_max = 2 + round % 2;
        SolverConfig c = quick_config(round);
        c.k_max = k_max;
        SolveResult r = ils_rcc(g, c);
        std::vector<int> assign = r.partition.assignment();
        int k = r.partition.cluster_count();
        for (int v = 0; v < n; ++v) {
            int limit = k < k_max ? k : k - 1; // may open a slot only under the cap
            for (int cand = 0; cand <= limit; ++cand) {
                if (cand == assign[v])
                    continue;
                std::vector<int> moved = assign;
                moved[v] = cand;
                CHECK(relaxed_imbalance(g, Partition(moved)) >= r.objective - 1e-9);
            }
        }
    }
}

} // suite

TEST_SUITE("k sweep") {

TEST_CASE("shape and dominance on a balanced fixture") {
    SignedGraph g = planted_two_camps();
    auto results = k_sweep(g, quick_config());
    REQUIRE(results.size() == 4);
    CHECK(results[0].objective_kind == ObjectiveKind::CC);
    CHECK(results[0].objective == 0.0);
    CHECK(results[0].partition.cluster_count() == 2);
    for (int i = 1; i < 4; ++i) {
        CHECK(results[i].objective_kind == ObjectiveKind::RCC);
        CHECK(results[i].objective <= results[0].objective);
        // Caps k', k'+1, k'+2 bound the returned cluster counts.
        CHECK(results[i].partition.cluster_count() <= 2 + (i - 1));
    }
}

TEST_CASE("relaxed runs never score above the cc run") {
    std::mt19937_64 rng(333);
    for (int round = 0; round < 10; ++round) {
        SignedGraph g = oracles::random_graph(rng, 6 + round, 0.5);
        auto results = k_sweep(g, quick_config(round));
        REQUIRE(results.size() == 4);
        for (int i = 1; i < 4; ++i)
            CHECK(results[i].objective <= results[0].objective);
    }
}

TEST_CASE("cluster caps clamp to the vertex count") {
    SignedGraph two(2, {{0, 1, 1.0, EdgeSign::negative}});
    auto results = k_sweep(two, quick_config());
    REQUIRE(results.size() == 4);
    CHECK(results[0].partition.cluster_count() == 2);
    for (int i = 1; i < 4; ++i)
        CHECK(results[i].partition.cluster_count() <= 2);
}

TEST_CASE("edgeless and empty graphs") {
    SignedGraph edgeless(4, {});
    auto r = k_sweep(edgeless, quick_config());
    REQUIRE(r.size() == 4);
    CHECK(r[0].partition.cluster_count() == 1);
    for (const auto& res : r) {
        CHECK(res.objective == 0.0);
        CHECK(res.proven_optimal);
    }

    auto e = k_sweep(SignedGraph(), quick_config());
    REQUIRE(e.size() == 4);
    for (const auto& res : e) {
        CHECK(res.partition.size() == 0);
        CHECK(res.proven_optimal);
    }
}

TEST_CASE("deterministic end to end") {
    std::mt19937_64 rng(515);
    SignedGraph g = oracles::random_graph(rng, 14, 0.5);
    auto a = k_sweep(g, quick_config(3));
    auto b = k_sweep(g, quick_config(3));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].partition == b[i].partition);
        CHECK(a[i].objective == b[i].objective);
    }
}

} // suite
