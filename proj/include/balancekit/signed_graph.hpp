#pragma once

#include <span>
#include <string>
#include <vector>

namespace balancekit {

enum class EdgeSign { positive, negative };

struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0; // always > 0 and <= 1
    EdgeSign sign = EdgeSign::positive;

    double signed_weight() const {
        return sign == EdgeSign::negative ? -weight : weight;
    }
};

/// Undirected weighted graph with a +/- sign per edge. Immutable after
/// construction; edges are normalized to u < v and stored sorted, so edge
/// order (and therefore every accumulation over edges) is canonical.
class SignedGraph {
public:
    struct Neighbor {
        int vertex;
        double weight;
        EdgeSign sign;
    };

    SignedGraph() = default;
    SignedGraph(int vertex_count, std::vector<Edge> edges,
                std::vector<std::string> labels = {});

    int vertex_count() const { return vertex_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_labels() const { return !labels_.empty(); }
    std::string label(int v) const;
    const std::vector<std::string>& labels() const { return labels_; }

    double total_weight() const { return total_weight_; }
    double positive_weight() const { return positive_weight_; }
    double negative_weight() const { return total_weight_ - positive_weight_; }
    int positive_edge_count() const { return positive_edge_count_; }
    int negative_edge_count() const { return edge_count() - positive_edge_count_; }

    std::span<const Neighbor> neighbors(int v) const;
    int degree(int v) const;

    /// Subgraph induced by the given vertex ids, relabeled 0..k-1 in
    /// increasing order of the original ids. Labels are carried over.
    SignedGraph induced_subgraph(std::span<const int> vertices) const;

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    double total_weight_ = 0.0;
    double positive_weight_ = 0.0;
    int positive_edge_count_ = 0;
    // CSR-style adjacency over both signs
    std::vector<int> adj_offsets_;
    std::vector<Neighbor> adj_;
};

/// Sign-blind connected components, largest first (ties by smallest member).
/// Their union is the whole vertex set; isolated vertices form size-1
/// components.
std::vector<std::vector<int>> connected_components(const SignedGraph& graph);

} // namespace balancekit
