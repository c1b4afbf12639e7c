#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "balancekit/partition.hpp"
#include "balancekit/signed_graph.hpp"

namespace balancekit {

/// Quotient view of a partitioned signed graph: one node per cluster,
/// positive/negative weight aggregates inside clusters and across each
/// unordered cluster pair. The stored weights sum to total_weight.
struct ClusterGraph {
    struct Cluster {
        std::vector<int> members;
        double internal_pos_weight = 0.0;
        double internal_neg_weight = 0.0;
    };

    std::vector<Cluster> clusters;
    // Keyed by (i, j) with i < j; only pairs joined by at least one edge.
    std::map<std::pair<int, int>, std::pair<double, double>> pair_weights;
    double total_weight = 0.0;
};

ClusterGraph build_cluster_graph(const SignedGraph& graph, const Partition& partition);

/// Graphviz rendering: positive edges green, negative red; each node carries
/// its internal positive/negative weight shares of the total graph weight.
std::string cluster_graph_to_dot(const ClusterGraph& cg, const SignedGraph& graph);

/// JSON document mirroring the ClusterGraph fields, with member labels when
/// the underlying graph carries them.
std::string cluster_graph_to_json(const ClusterGraph& cg, const SignedGraph& graph);

} // namespace balancekit
