#include "balancekit/graph_build.hpp"

#include <cmath>

namespace balancekit {

SignedGraph build_graph(const SimilarityMatrix& matrix) {
    std::vector<Edge> edges;
    for (int i = 0; i < matrix.size(); ++i)
        for (int j = i + 1; j < matrix.size(); ++j) {
            auto v = matrix.at(i, j);
            if (!v || *v == 0.0)
                continue;
            edges.push_back({i, j, std::abs(*v),
                             *v > 0 ? EdgeSign::positive : EdgeSign::negative});
        }
    return SignedGraph(matrix.size(), std::move(edges), matrix.labels());
}

} // namespace balancekit
