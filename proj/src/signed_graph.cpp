#include "balancekit/signed_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace balancekit {

SignedGraph::SignedGraph(int vertex_count, std::vector<Edge> edges,
                         std::vector<std::string> labels)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      labels_(std::move(labels)) {
    if (vertex_count_ < 0)
        throw std::invalid_argument("vertex count must be >= 0");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != vertex_count_)
        throw std::invalid_argument("label list size does not match vertex count");

    for (Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("self-loops are not allowed");
        if (!(e.weight > 0.0) || e.weight > 1.0)
            throw std::invalid_argument("edge weight must be in (0, 1]");
        if (e.u > e.v)
            std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw std::invalid_argument("duplicate edge {" + std::to_string(edges_[i].u) +
                                        "," + std::to_string(edges_[i].v) + "}");
    }

    std::vector<int> deg(vertex_count_, 0);
    for (const Edge& e : edges_) {
        total_weight_ += e.weight;
        if (e.sign == EdgeSign::positive) {
            positive_weight_ += e.weight;
            ++positive_edge_count_;
        }
        ++deg[e.u];
        ++deg[e.v];
    }

    adj_offsets_.assign(vertex_count_ + 1, 0);
    for (int v = 0; v < vertex_count_; ++v)
        adj_offsets_[v + 1] = adj_offsets_[v] + deg[v];
    adj_.resize(edges_.size() * 2);
    std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[cursor[e.u]++] = {e.v, e.weight, e.sign};
        adj_[cursor[e.v]++] = {e.u, e.weight, e.sign};
    }
}

std::string SignedGraph::label(int v) const {
    if (v < 0 || v >= vertex_count_)
        throw std::out_of_range("vertex id out of range");
    return labels_.empty() ? std::to_string(v) : labels_[v];
}

std::span<const SignedGraph::Neighbor> SignedGraph::neighbors(int v) const {
    return {adj_.data() + adj_offsets_[v],
            static_cast<std::size_t>(adj_offsets_[v + 1] - adj_offsets_[v])};
}

int SignedGraph::degree(int v) const {
    return adj_offsets_[v + 1] - adj_offsets_[v];
}

SignedGraph SignedGraph::induced_subgraph(std::span<const int> vertices) const {
    std::vector<int> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != vertices.size())
        throw std::invalid_argument("induced subgraph: duplicate vertex ids");

    std::vector<int> new_id(vertex_count_, -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= vertex_count_)
            throw std::invalid_argument("induced subgraph: vertex id out of range");
        new_id[sorted[i]] = static_cast<int>(i);
    }

    std::vector<Edge> sub_edges;
    for (const Edge& e : edges_) {
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0)
            sub_edges.push_back({new_id[e.u], new_id[e.v], e.weight, e.sign});
    }
    std::vector<std::string> sub_labels;
    if (has_labels()) {
        sub_labels.reserve(sorted.size());
        for (int v : sorted)
            sub_labels.push_back(labels_[v]);
    }
    return SignedGraph(static_cast<int>(sorted.size()), std::move(sub_edges),
                       std::move(sub_labels));
}

std::vector<std::vector<int>> connected_components(const SignedGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0)
            continue;
        const int id = static_cast<int>(components.size());
        components.emplace_back();
        comp[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            components[id].push_back(v);
            for (const auto& nb : graph.neighbors(v)) {
                if (comp[nb.vertex] < 0) {
                    comp[nb.vertex] = id;
                    stack.push_back(nb.vertex);
                }
            }
        }
        std::sort(components[id].begin(), components[id].end());
    }
    std::sort(components.begin(), components.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
              });
    return components;
}

} // namespace balancekit
