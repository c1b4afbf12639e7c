#include "balancekit/imbalance.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace balancekit {

namespace {

void check_domain(const SignedGraph& graph, const Partition& partition) {
    if (partition.size() != graph.vertex_count())
        throw std::invalid_argument(
            "partition covers " + std::to_string(partition.size()) +
            " vertices but the graph has " + std::to_string(graph.vertex_count()));
}

// Per-block positive/negative weight, keyed by unordered cluster pair; each
// undirected edge lives in exactly one block. Both objectives sum over these
// identical partial sums in identical order, which keeps the relaxed value
// <= the strict one in floating point, not just mathematically.
std::map<std::pair<int, int>, std::pair<double, double>>
block_weights(const SignedGraph& graph, const Partition& partition) {
    std::map<std::pair<int, int>, std::pair<double, double>> blocks;
    for (const Edge& e : graph.edges()) {
        int ci = partition.cluster_of(e.u);
        int cj = partition.cluster_of(e.v);
        if (ci > cj)
            std::swap(ci, cj);
        auto& [pos, neg] = blocks[{ci, cj}];
        if (e.sign == EdgeSign::positive)
            pos += e.weight;
        else
            neg += e.weight;
    }
    return blocks;
}

} // namespace

double imbalance(const SignedGraph& graph, const Partition& partition) {
    check_domain(graph, partition);
    double total = 0.0;
    for (const auto& [key, w] : block_weights(graph, partition))
        total += key.first == key.second ? w.second : w.first;
    return total;
}

double relaxed_imbalance(const SignedGraph& graph, const Partition& partition) {
    check_domain(graph, partition);
    double total = 0.0;
    for (const auto& [key, w] : block_weights(graph, partition))
        total += std::min(w.first, w.second);
    return total;
}

double imbalance_percent(const SignedGraph& graph, double raw_imbalance) {
    if (graph.edge_count() == 0)
        throw std::invalid_argument(
            "imbalance percent is undefined on an edgeless graph");
    return 100.0 * raw_imbalance / graph.total_weight();
}

} // namespace balancekit
