#pragma once

#include "balancekit/signed_graph.hpp"
#include "balancekit/similarity.hpp"

namespace balancekit {

// One vertex per matrix row; an edge for every defined non-zero similarity,
// weight |Sim| and the sign of Sim. Zero and undefined entries give no edge.
SignedGraph build_graph(const SimilarityMatrix& matrix);

} // namespace balancekit
