#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "balancekit/partition.hpp"
#include "balancekit/signed_graph.hpp"
#include "balancekit/solver.hpp"

namespace balancekit {

struct RccEntry {
    int k_max = 0;
    double objective = 0.0;
    double elapsed_seconds = 0.0;
};

// One row of the evaluation outputs. Fields are optional because the same
// shape serves both the filtering study and the solver benchmark.
struct InstanceReport {
    std::string instance_id;
    int vertex_count = 0;

    std::optional<long long> links_before, links_after;
    std::optional<long long> positive_links_removed, negative_links_removed;
    std::optional<double> weight_before, weight_after;
    std::optional<double> link_removal_fraction, weight_removal_fraction;
    std::optional<int> component_count_before, component_count_after;
    std::optional<double> giant_share_before, giant_share_after;

    std::optional<int> cluster_count_before, cluster_count_after;
    std::optional<double> imbalance_percent_before, imbalance_percent_after;
    std::optional<double> nmi_filtered_vs_unfiltered;

    std::optional<double> exact_objective, exact_seconds;
    std::optional<bool> exact_proven;
    std::optional<double> heuristic_objective, heuristic_seconds;
    std::optional<double> objective_gap_percent; // gap as percent of total weight
    std::optional<double> nmi_heuristic_vs_exact;

    std::vector<RccEntry> rcc;
};

// Structural and partition-level effect of filtering. The filtered graph must
// be on the same vertices and its edges a subset of the unfiltered ones with
// unchanged weight and sign; p_unf/p_f are the partitions found on each.
InstanceReport filtering_report(const SignedGraph& unfiltered, const SignedGraph& filtered,
                                const Partition& p_unf, const Partition& p_f,
                                const std::string& instance_id = "instance");

// For each size, solves a uniformly sampled induced subgraph with both the
// exact and the heuristic solver and records objectives, the gap and times.
// Sampling derives from config.rng_seed and the size, so rows are independent
// of each other and reproducible.
std::vector<InstanceReport> benchmark(const std::vector<int>& sizes, const SignedGraph& source,
                                      const SolverConfig& config);

void write_reports_csv(std::ostream& out, const std::vector<InstanceReport>& reports);
// Long format, one "instance_id,metric,value" row per present numeric field;
// ready for plotting tools.
void write_reports_long_csv(std::ostream& out, const std::vector<InstanceReport>& reports);
void write_reports_json(std::ostream& out, const std::vector<InstanceReport>& reports);

} // namespace balancekit
