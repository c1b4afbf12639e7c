#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "balancekit/partition.hpp"
#include "balancekit/signed_graph.hpp"

namespace balancekit {

struct SolverConfig {
    int max_iterations = 1000;
    int perturbation_strength = 3;
    int restarts = 4;
    double time_budget = 3600.0; // seconds
    std::uint64_t rng_seed = 42;
    std::optional<int> k_max;    // cluster-count cap, used by the relaxed objective

    // Counts must be >= 1 and the budget positive; k_max, when present, >= 1.
    void validate() const;
};

enum class ObjectiveKind { CC, RCC };

struct SolveResult {
    Partition partition;
    double objective = 0.0;
    ObjectiveKind objective_kind = ObjectiveKind::CC;
    long long iterations_used = 0;
    double elapsed_seconds = 0.0;
    bool proven_optimal = false;
};

// Branch and bound over cluster assignments, vertices in degree-descending
// order, symmetry broken by only ever opening the next cluster index. Returns
// the minimum-imbalance partition, the lexicographically smallest canonical
// assignment among co-optima. If the time budget runs out the best incumbent
// comes back with proven_optimal = false.
SolveResult exact_cc(const SignedGraph& graph, const SolverConfig& config = {});

// Iterated local search on the imbalance objective: greedy randomized
// construction, best-improvement single-vertex relocation, random relocation
// kicks with better-only acceptance. Deterministic for a fixed rng_seed.
SolveResult ils_cc(const SignedGraph& graph, const SolverConfig& config = {});

// Same search scheme on the relaxed objective with at most config.k_max
// clusters (required). An optional warm start seeds restart 0's construction.
SolveResult ils_rcc(const SignedGraph& graph, const SolverConfig& config,
                    const std::optional<Partition>& warm_start = std::nullopt);

// Protocol: ils_cc gives k' clusters, then ils_rcc at k_max = k', k'+1, k'+2,
// each warm-started from the CC partition. Returns the CC result followed by
// the three relaxed results.
std::vector<SolveResult> k_sweep(const SignedGraph& graph, const SolverConfig& config = {});

} // namespace balancekit
