#pragma once

#include "balancekit/partition.hpp"
#include "balancekit/signed_graph.hpp"

namespace balancekit {

/// Total weight of frustrated edges under the partition: positive edges
/// between clusters plus negative edges inside them. Accumulated per cluster
/// block in stored edge order, so the value is reproducible bit for bit and
/// relaxed_imbalance() never exceeds it even in floating point.
double imbalance(const SignedGraph& graph, const Partition& partition);

/// Per-block relaxation: inside each cluster and between each unordered
/// cluster pair, only the minority sign's weight counts. Never exceeds
/// imbalance() for the same partition.
double relaxed_imbalance(const SignedGraph& graph, const Partition& partition);

/// Raw imbalance as a percentage of the graph's total link weight.
/// Throws on an edgeless graph, where the percentage is undefined.
double imbalance_percent(const SignedGraph& graph, double raw_imbalance);

} // namespace balancekit
