#include "balancekit/cluster_graph.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "balancekit/numio.hpp"

namespace balancekit {

ClusterGraph build_cluster_graph(const SignedGraph& graph, const Partition& partition) {
    if (partition.size() != graph.vertex_count())
        throw std::invalid_argument(
            "partition covers " + std::to_string(partition.size()) +
            " vertices but the graph has " + std::to_string(graph.vertex_count()));

    ClusterGraph cg;
    cg.clusters.resize(partition.cluster_count());
    for (int v = 0; v < graph.vertex_count(); ++v)
        cg.clusters[partition.cluster_of(v)].members.push_back(v);
    cg.total_weight = graph.total_weight();

    for (const Edge& e : graph.edges()) {
        int ci = partition.cluster_of(e.u);
        int cj = partition.cluster_of(e.v);
        if (ci == cj) {
            auto& c = cg.clusters[ci];
            if (e.sign == EdgeSign::positive)
                c.internal_pos_weight += e.weight;
            else
                c.internal_neg_weight += e.weight;
        } else {
            if (ci > cj)
                std::swap(ci, cj);
            auto& [pos, neg] = cg.pair_weights[{ci, cj}];
            if (e.sign == EdgeSign::positive)
                pos += e.weight;
            else
                neg += e.weight;
        }
    }
    return cg;
}

namespace {

double share(double w, double total) { return total > 0.0 ? w / total : 0.0; }

std::string percent_label(double w, double total) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << 100.0 * share(w, total);
    return os.str();
}

} // namespace

std::string cluster_graph_to_dot(const ClusterGraph& cg, const SignedGraph& graph) {
    (void)graph;
    std::ostringstream os;
    os << "graph clusters {\n";
    os << "  layout=neato;\n";
    os << "  node [shape=circle, style=filled, fillcolor=white, fixedsize=false];\n";
    for (std::size_t i = 0; i < cg.clusters.size(); ++i) {
        const auto& c = cg.clusters[i];
        const double internal = c.internal_pos_weight + c.internal_neg_weight;
        os << "  c" << i << " [label=\"C" << i << " (" << c.members.size() << ")\\n+"
           << percent_label(c.internal_pos_weight, cg.total_weight) << "% / -"
           << percent_label(c.internal_neg_weight, cg.total_weight) << "%\""
           << ", internal_pos_share=\"" << format_double(share(c.internal_pos_weight, cg.total_weight))
           << "\", internal_neg_share=\"" << format_double(share(c.internal_neg_weight, cg.total_weight))
           << "\"";
        if (internal > 0.0) {
            // Pie rendering of the node's internal sign mix.
            os << ", style=wedged, fillcolor=\"green;"
               << format_double(c.internal_pos_weight / internal) << ":red;"
               << format_double(c.internal_neg_weight / internal) << "\"";
        }
        os << "];\n";
    }
    for (const auto& [key, w] : cg.pair_weights) {
        const auto& [pos, neg] = w;
        if (pos > 0.0)
            os << "  c" << key.first << " -- c" << key.second
               << " [color=green, label=\"+" << percent_label(pos, cg.total_weight)
               << "%\", weight_share=\"" << format_double(share(pos, cg.total_weight)) << "\"];\n";
        if (neg > 0.0)
            os << "  c" << key.first << " -- c" << key.second
               << " [color=red, label=\"-" << percent_label(neg, cg.total_weight)
               << "%\", weight_share=\"" << format_double(share(neg, cg.total_weight)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string cluster_graph_to_json(const ClusterGraph& cg, const SignedGraph& graph) {
    nlohmann::json doc;
    doc["total_weight"] = cg.total_weight;
    doc["cluster_count"] = cg.clusters.size();
    auto& clusters = doc["clusters"] = nlohmann::json::array();
    for (std::size_t i = 0; i < cg.clusters.size(); ++i) {
        const auto& c = cg.clusters[i];
        nlohmann::json jc;
        jc["id"] = i;
        jc["members"] = c.members;
        if (graph.has_labels()) {
            std::vector<std::string> labels;
            labels.reserve(c.members.size());
            for (int v : c.members)
                labels.push_back(graph.label(v));
            jc["member_labels"] = labels;
        }
        jc["internal_pos_weight"] = c.internal_pos_weight;
        jc["internal_neg_weight"] = c.internal_neg_weight;
        jc["internal_pos_share"] = share(c.internal_pos_weight, cg.total_weight);
        jc["internal_neg_share"] = share(c.internal_neg_weight, cg.total_weight);
        clusters.push_back(std::move(jc));
    }
    auto& pairs = doc["pair_weights"] = nlohmann::json::array();
    for (const auto& [key, w] : cg.pair_weights) {
        nlohmann::json jp;
        jp["clusters"] = {key.first, key.second};
        jp["pos_weight"] = w.first;
        jp["neg_weight"] = w.second;
        jp["pos_share"] = share(w.first, cg.total_weight);
        jp["neg_share"] = share(w.second, cg.total_weight);
        pairs.push_back(std::move(jp));
    }
    return doc.dump(2) + "\n";
}

} // namespace balancekit
