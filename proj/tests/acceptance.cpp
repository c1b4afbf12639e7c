// Acceptance gate: one line per criterion, pass/fail decided by thresholds
// that are fixed here and nowhere else. Exit code 0 means no criterion failed
// (skipped criteria report why they could not run).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "balancekit/filtering.hpp"
#include "balancekit/graph_build.hpp"
#include "balancekit/graph_io.hpp"
#include "balancekit/imbalance.hpp"
#include "balancekit/nmi.hpp"
#include "balancekit/numio.hpp"
#include "balancekit/reports.hpp"
#include "balancekit/similarity.hpp"
#include "balancekit/solver.hpp"
#include "balancekit/votes.hpp"
#include "oracles.hpp"

using namespace balancekit;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct Verdict {
    enum class Kind { pass, fail, skip } kind;
    std::string detail;
};

Verdict pass(std::string d) { return {Verdict::Kind::pass, std::move(d)}; }
Verdict fail(std::string d) { return {Verdict::Kind::fail, std::move(d)}; }
Verdict skip(std::string d) { return {Verdict::Kind::skip, std::move(d)}; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. The branch-and-bound solver must agree with plain enumeration, objective
// and tie-broken partition alike, with no tolerance at all.
Verdict exact_equals_enumeration() {
    auto start = Clock::now();
    std::mt19937_64 rng(9001);
    int rounds = 200, bad = 0;
    for (int round = 0; round < rounds; ++round) {
        int n = 3 + round % 6;
        double density = 0.3 + 0.3 * (round % 3);
        SignedGraph g = oracles::random_graph(rng, n, density);
        oracles::BruteForceResult brute = oracles::brute_force_cc(g);
        SolveResult ex = exact_cc(g);
        if (!ex.proven_optimal || ex.objective != brute.objective ||
            !(ex.partition == brute.partition))
            ++bad;
    }
    double elapsed = seconds_since(start);
    std::string detail = std::to_string(rounds - bad) + "/" + std::to_string(rounds) +
                         " exact matches (objective and partition, zero tolerance) in " +
                         fmt(elapsed) + "s";
    if (bad > 0)
        return fail(detail);
    if (elapsed >= 60.0)
        return fail(detail + ", over the 60s budget");
    return pass(detail);
}

// 2. Default-config local search must hit the proven optimum on at least 95%
// of mid-size instances and stay within 2% of total weight on the rest.
Verdict heuristic_quality() {
    auto start = Clock::now();
    std::mt19937_64 rng(9002);
    int rounds = 100, optimal = 0, near = 0, unproven = 0;
    double worst_gap = 0.0;
    for (int round = 0; round < rounds; ++round) {
        int n = 8 + round % 13;
        double density = (round % 2) ? 0.35 : 0.7;
        SignedGraph g = oracles::random_graph(rng, n, density);
        SolverConfig exact_config;
        exact_config.time_budget = 60.0;
        SolveResult ex = exact_cc(g, exact_config);
        if (!ex.proven_optimal) {
            ++unproven;
            continue;
        }
        SolveResult h = ils_cc(g);
        double diff = h.objective - ex.objective;
        if (diff <= 1e-9) {
            ++optimal;
        } else {
            double gap = g.total_weight() > 0.0 ? 100.0 * diff / g.total_weight() : 0.0;
            worst_gap = std::max(worst_gap, gap);
            if (gap <= 2.0)
                ++near;
        }
    }
    double elapsed = seconds_since(start);
    std::string detail = std::to_string(optimal) + "/" + std::to_string(rounds) +
                         " optimal, worst gap " + fmt(worst_gap) + "% of total weight, " +
                         fmt(elapsed) + "s";
    if (unproven > 0)
        detail += ", " + std::to_string(unproven) + " instances unproven within 60s";
    bool ok = unproven == 0 && optimal >= 95 && optimal + near == rounds && elapsed < 300.0;
    return ok ? pass(detail) : fail(detail);
}

// 3. In every sweep the relaxed objective may never exceed the plain one the
// sweep started from; strict float comparison, zero violations allowed.
Verdict relaxed_dominance() {
    std::mt19937_64 rng(9003);
    long long comparisons = 0;
    int violations = 0;
    auto check_sweep = [&](const SignedGraph& g, SolverConfig c) {
        std::vector<SolveResult> results = k_sweep(g, c);
        for (std::size_t i = 1; i < results.size(); ++i) {
            ++comparisons;
            if (results[i].objective > results[0].objective)
                ++violations;
        }
    };
    for (int round = 0; round < 60; ++round) {
        int n = 4 + round % 13;
        double density = 0.25 + 0.25 * (round % 3);
        SignedGraph g = oracles::random_graph(rng, n, density);
        SolverConfig c;
        c.max_iterations = 400;
        c.restarts = 3;
        c.rng_seed = 1000 + round;
        check_sweep(g, c);
    }
    check_sweep(read_graph_file(std::string(BALANCEKIT_FIXTURES_DIR) + "/votes_6mep.graph"),
                SolverConfig{});
    std::string detail = std::to_string(violations) + " violations in " +
                         std::to_string(comparisons) + " comparisons (zero tolerance)";
    return violations == 0 ? pass(detail) : fail(detail);
}

// 4. The block-matrix objective must match the per-edge sum to 1e-9, and the
// relaxed objective may never exceed it, bit for bit.
Verdict objective_identities() {
    std::mt19937_64 rng(9004);
    int rounds = 1000, mismatches = 0, dominance_breaks = 0;
    for (int round = 0; round < rounds; ++round) {
        int n = 2 + round % 11;
        double density = 0.2 + 0.3 * (round % 3);
        SignedGraph g = oracles::random_graph(rng, n, density);
        Partition p = oracles::random_partition(rng, n, 1 + round % 5);
        double block = imbalance(g, p);
        if (std::abs(block - oracles::edge_misplacement_sum(g, p)) > 1e-9)
            ++mismatches;
        if (!(relaxed_imbalance(g, p) <= block))
            ++dominance_breaks;
    }
    std::string detail = std::to_string(rounds) + " pairs: " + std::to_string(mismatches) +
                         " identity mismatches (tol 1e-9), " + std::to_string(dominance_breaks) +
                         " relaxed-over-plain breaks (zero tolerance)";
    return mismatches == 0 && dominance_breaks == 0 ? pass(detail) : fail(detail);
}

// 5. Partition similarity: symmetry, range, relabel invariance, self score 1,
// and the frozen refinement-vs-crossing ordering.
Verdict similarity_properties() {
    std::mt19937_64 rng(9005);
    int rounds = 500, bad = 0;
    for (int round = 0; round < rounds; ++round) {
        int n = 2 + round % 15;
        Partition a = oracles::random_partition(rng, n, 1 + round % 5);
        Partition b = oracles::random_partition(rng, n, 1 + (round / 3) % 5);
        double ab = nmi(a, b);
        bool ok = std::abs(ab - nmi(b, a)) <= 1e-12 && ab >= 0.0 && ab <= 1.0 &&
                  nmi(a, a) == 1.0;
        std::vector<int> reversed(a.assignment());
        for (int& c : reversed)
            c = a.cluster_count() - 1 - c;
        ok = ok && nmi(a, Partition(reversed)) == 1.0;
        if (!ok)
            ++bad;
    }
    Partition ref(std::vector<int>{0, 0, 1, 1});
    double refined = nmi(ref, Partition(std::vector<int>{0, 1, 2, 2}));
    double crossed = nmi(ref, Partition(std::vector<int>{0, 1, 2, 1}));
    bool frozen_ok = std::abs(refined - 0.8) <= 1e-12 && std::abs(crossed - 0.4) <= 1e-12 &&
                     refined > crossed;
    std::string detail = std::to_string(rounds - bad) + "/" + std::to_string(rounds) +
                         " property rounds, refinement scores " + fmt(refined) + " > " +
                         fmt(crossed) + " (expected 0.8 > 0.4, tol 1e-12)";
    return bad == 0 && frozen_ok ? pass(detail) : fail(detail);
}

// 6. Filtering is idempotent, removes weight no faster than links on bimodal
// matrices, and the bundled hand-checked extraction reproduces byte-exactly.
Verdict filtering_properties() {
    std::mt19937_64 rng(9006);
    int rounds = 100, idempotence_bad = 0, fraction_bad = 0;
    for (int round = 0; round < rounds; ++round) {
        int n = 5 + round % 8;
        SimilarityMatrix m = oracles::random_bimodal_matrix(rng, n);
        FilterThresholds th = compute_thresholds(m);
        SimilarityMatrix once = apply_filter(m, th);
        SimilarityMatrix twice = apply_filter(once, th);
        for (int i = 0; i < m.size(); ++i)
            for (int j = i + 1; j < m.size(); ++j)
                if (once.at(i, j) != twice.at(i, j))
                    ++idempotence_bad;
        SignedGraph unfiltered = build_graph(m);
        SignedGraph filtered = build_graph(once);
        double link_frac =
            static_cast<double>(unfiltered.edge_count() - filtered.edge_count()) /
            unfiltered.edge_count();
        double weight_frac =
            (unfiltered.total_weight() - filtered.total_weight()) / unfiltered.total_weight();
        if (weight_frac > link_frac + 1e-12)
            ++fraction_bad;
    }

    VoteTable table =
        load_vote_csv_file(std::string(BALANCEKIT_FIXTURES_DIR) + "/votes_6mep.csv");
    SelectionFilter filter;
    filter.countries = {"FR"};
    filter.domains = {"AGRI"};
    filter.date_range = {{"2012-07-01", "2013-06-30"}};
    SimilarityMatrix sims = similarity_matrix(select(table, filter));
    SignedGraph graph = build_graph(apply_filter(sims, compute_thresholds(sims)));
    std::ostringstream bytes;
    write_graph(bytes, graph);
    bool golden_ok =
        bytes.str() == read_file(std::string(BALANCEKIT_FIXTURES_DIR) + "/votes_6mep.graph");

    std::string detail = std::to_string(rounds) + " matrices: " +
                         std::to_string(idempotence_bad) + " idempotence breaks, " +
                         std::to_string(fraction_bad) +
                         " weight-over-link breaks (tol 1e-12); golden extraction " +
                         (golden_ok ? "byte-exact" : "DIFFERS");
    return idempotence_bad == 0 && fraction_bad == 0 && golden_ok ? pass(detail) : fail(detail);
}

// 7. Known full-corpus results. The shipped fixture is a hand-built miniature,
// so this runs only when the real roll-call CSV is supplied via
// BALANCEKIT_DATASET; the per-instance targets then have to land on the
// reference values (within rounding half-width for exact ones, best of 10
// seeds for the relaxed ones) and the corpus aggregates within 5 points.
Verdict corpus_reproduction() {
    const char* env = std::getenv("BALANCEKIT_DATASET");
    if (!env || !*env)
        return skip("set BALANCEKIT_DATASET to the full roll-call CSV; the bundled "
                    "6-vertex fixture cannot reproduce corpus-scale values");

    VoteTable table = load_vote_csv_file(env);
    std::vector<std::string> problems;

    auto extract_pair = [&](const std::string& country, const std::string& domain,
                            const std::string& from,
                            const std::string& to) -> std::pair<SignedGraph, SignedGraph> {
        SelectionFilter f;
        f.countries = {country};
        f.domains = {domain};
        f.date_range = {{from, to}};
        SimilarityMatrix sims = similarity_matrix(select(table, f));
        SignedGraph raw = build_graph(sims);
        SignedGraph filtered = build_graph(apply_filter(sims, compute_thresholds(sims)));
        return {raw, filtered};
    };

    auto best_rcc = [&](const SignedGraph& g, int k) {
        double best = 0.0;
        for (int seed = 1; seed <= 10; ++seed) {
            SolverConfig c;
            c.k_max = k;
            c.rng_seed = seed;
            double obj = ils_rcc(g, c).objective;
            if (seed == 1 || obj < best)
                best = obj;
        }
        return best;
    };

    auto check = [&](const std::string& what, double got, double want, double tol) {
        if (std::abs(got - want) > tol)
            problems.push_back(what + " got " + fmt(got) + ", want " + fmt(want));
    };

    // French agriculture 2012-13: plain objective and its share of the weight,
    // then the relaxed sweep values.
    {
        auto [raw, filtered] = extract_pair("FR", "AGRI", "2012-07-01", "2013-06-30");
        (void)raw;
        SolverConfig c;
        c.time_budget = 600.0;
        SolveResult ex = exact_cc(filtered, c);
        if (!ex.proven_optimal)
            problems.push_back("FR/AGRI 2012-13 exact run hit the 600s budget");
        check("FR/AGRI 2012-13 objective", ex.objective, 14.18, 0.005);
        check("FR/AGRI 2012-13 percent", imbalance_percent(filtered, ex.objective), 1.35, 0.005);
        check("FR/AGRI 2012-13 relaxed k=3", best_rcc(filtered, 3), 0.19, 0.005);
        check("FR/AGRI 2012-13 relaxed k=4", best_rcc(filtered, 4), 0.0, 1e-9);
    }
    // French economy 2009-10.
    {
        auto [raw, filtered] = extract_pair("FR", "ECON", "2009-07-01", "2010-06-30");
        (void)raw;
        SolverConfig c;
        c.time_budget = 600.0;
        SolveResult ex = exact_cc(filtered, c);
        if (!ex.proven_optimal)
            problems.push_back("FR/ECON 2009-10 exact run hit the 600s budget");
        check("FR/ECON 2009-10 objective", ex.objective, 46.72, 0.005);
        check("FR/ECON 2009-10 relaxed k=3", best_rcc(filtered, 3), 36.64, 0.005);
        check("FR/ECON 2009-10 relaxed k=4", best_rcc(filtered, 4), 2.5, 0.05);
    }
    // Italian agriculture 2012-13 and economy 2009-10.
    {
        auto [raw, filtered] = extract_pair("IT", "AGRI", "2012-07-01", "2013-06-30");
        (void)raw;
        SolverConfig c;
        c.time_budget = 600.0;
        SolveResult ex = exact_cc(filtered, c);
        if (!ex.proven_optimal)
            problems.push_back("IT/AGRI 2012-13 exact run hit the 600s budget");
        check("IT/AGRI 2012-13 objective", ex.objective, 8.58, 0.005);
    }
    {
        auto [raw, filtered] = extract_pair("IT", "ECON", "2009-07-01", "2010-06-30");
        (void)raw;
        check("IT/ECON 2009-10 relaxed k=3", best_rcc(filtered, 3), 0.49, 0.005);
    }

    // Corpus aggregates: average removal rates and the share of networks whose
    // best partition is a single cluster, before and after filtering.
    {
        double link_sum = 0.0, weight_sum = 0.0;
        int networks = 0, single_before = 0, single_after = 0, unproven = 0;
        std::vector<std::string> years;
        for (const TextRecord& t : table.texts()) {
            int year = parse_int(t.date.substr(0, 4)) - (t.date.substr(5, 2) < "07" ? 1 : 0);
            std::string from = std::to_string(year) + "-07-01";
            if (std::find(years.begin(), years.end(), from) == years.end())
                years.push_back(from);
        }
        auto cluster_count = [&](const SignedGraph& g) -> std::optional<int> {
            SolverConfig c;
            c.time_budget = 120.0;
            SolveResult ex = exact_cc(g, c);
            if (ex.proven_optimal)
                return ex.partition.cluster_count();
            ++unproven;
            SolverConfig h;
            h.restarts = 10;
            return ils_cc(g, h).partition.cluster_count();
        };
        for (const std::string& country : table.countries())
            for (const std::string& domain : table.domains())
                for (const std::string& from : years) {
                    std::string to =
                        std::to_string(parse_int(from.substr(0, 4)) + 1) + "-06-30";
                    SelectionFilter f;
                    f.countries = {country};
                    f.domains = {domain};
                    f.date_range = {{from, to}};
                    VoteTable sel = select(table, f);
                    if (sel.mep_count() < 3 || sel.text_count() == 0)
                        continue;
                    SimilarityMatrix sims = similarity_matrix(sel);
                    SignedGraph raw = build_graph(sims);
                    if (raw.edge_count() == 0)
                        continue;
                    SignedGraph filtered =
                        build_graph(apply_filter(sims, compute_thresholds(sims)));
                    ++networks;
                    link_sum += 100.0 *
                                (raw.edge_count() - filtered.edge_count()) / raw.edge_count();
                    weight_sum += 100.0 * (raw.total_weight() - filtered.total_weight()) /
                                  raw.total_weight();
                    if (cluster_count(raw) == 1)
                        ++single_before;
                    if (cluster_count(filtered) == 1)
                        ++single_after;
                }
        if (networks == 0) {
            problems.push_back("no non-trivial networks in the dataset");
        } else {
            check("average link removal percent", link_sum / networks, 43.0, 5.0);
            check("average weight removal percent", weight_sum / networks, 26.0, 5.0);
            check("single-cluster share before filtering",
                  100.0 * single_before / networks, 55.0, 5.0);
            check("single-cluster share after filtering",
                  100.0 * single_after / networks, 38.0, 5.0);
            if (unproven > 0)
                problems.push_back(std::to_string(unproven) +
                                   " cluster counts fell back to the heuristic");
        }
    }

    if (problems.empty())
        return pass("all corpus targets reproduced");
    std::string joined;
    for (const std::string& p : problems)
        joined += (joined.empty() ? "" : "; ") + p;
    return fail(joined);
}

// 8. Benchmark smoke test on a 100-vertex instance: the sweep finishes, the
// heuristic stays within seconds per sample, and the exact solver visibly
// outgrows it (or hits its budget) as samples approach full size.
Verdict scaling_smoke() {
    auto start = Clock::now();
    std::mt19937_64 rng(9008);
    SignedGraph source = oracles::random_graph(rng, 100, 0.3);
    SolverConfig c;
    c.time_budget = 3.0;
    c.max_iterations = 200;
    c.restarts = 2;
    c.rng_seed = 7;
    std::vector<int> sizes;
    for (int s = 10; s <= 100; s += 10)
        sizes.push_back(s);
    std::vector<InstanceReport> rows = benchmark(sizes, source, c);
    double elapsed = seconds_since(start);

    double worst_heuristic = 0.0, min_exact = 0.0, max_exact = 0.0;
    bool budget_hit = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        worst_heuristic = std::max(worst_heuristic, *rows[i].heuristic_seconds);
        double ex = *rows[i].exact_seconds;
        min_exact = i == 0 ? ex : std::min(min_exact, ex);
        max_exact = std::max(max_exact, ex);
        if (!*rows[i].exact_proven)
            budget_hit = true;
    }
    bool heuristic_ok = worst_heuristic <= 10.0;
    bool growth_ok = budget_hit || max_exact >= 10.0 * std::max(min_exact, 1e-6);
    std::string detail = std::to_string(rows.size()) + " sizes in " + fmt(elapsed) +
                         "s, heuristic <= " + fmt(worst_heuristic) + "s per sample, exact " +
                         (budget_hit ? "hit its 3s budget on large samples"
                                     : "grew from " + fmt(min_exact) + "s to " +
                                           fmt(max_exact) + "s");
    bool ok = rows.size() == sizes.size() && heuristic_ok && growth_ok;
    return ok ? pass(detail) : fail(detail);
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {"exact solver equals enumeration", exact_equals_enumeration},
        {"heuristic quality", heuristic_quality},
        {"relaxed-objective dominance", relaxed_dominance},
        {"objective identities", objective_identities},
        {"partition-similarity properties", similarity_properties},
        {"filtering properties and golden extraction", filtering_properties},
        {"corpus value reproduction", corpus_reproduction},
        {"benchmark scaling smoke test", scaling_smoke},
    };

    int failed = 0, skipped = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v = [&]() -> Verdict {
            try {
                return criteria[i].run();
            } catch (const std::exception& e) {
                return fail(std::string("exception: ") + e.what());
            }
        }();
        const char* tag = v.kind == Verdict::Kind::pass   ? "PASS"
                          : v.kind == Verdict::Kind::fail ? "FAIL"
                                                          : "SKIP";
        if (v.kind == Verdict::Kind::fail)
            ++failed;
        if (v.kind == Verdict::Kind::skip)
            ++skipped;
        std::cout << "criterion " << (i + 1) << " " << criteria[i].name << ": " << tag << " ("
                  << v.detail << ")" << std::endl;
    }
    std::cout << "acceptance: " << (criteria.size() - failed - skipped) << " passed, " << failed
              << " failed, " << skipped << " skipped" << std::endl;
    return failed == 0 ? 0 : 1;
}
