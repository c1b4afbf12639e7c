#pragma once

#include <iosfwd>
#include <string>

#include "balancekit/partition.hpp"
#include "balancekit/signed_graph.hpp"

namespace balancekit {

// Edge-list format, tab separated:
//   # vertices=<n>            (required, before any edge)
//   # label<TAB><id><TAB><text>   (optional vertex labels)
//   <u><TAB><v><TAB><signed_weight>
// Other lines starting with '#' are comments. Signed weight carries the edge
// sign; its magnitude must lie in (0,1].
SignedGraph read_graph(std::istream& in, const std::string& name);
SignedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const SignedGraph& graph);
void write_graph_file(const std::string& path, const SignedGraph& graph);

// Membership format: one "<vertex_id><TAB><cluster_id>" line per vertex.
// Every vertex in [0,n) must appear exactly once; cluster ids are renumbered
// to canonical form on read.
Partition read_partition(std::istream& in, const std::string& name);
Partition read_partition_file(const std::string& path);
void write_partition(std::ostream& out, const Partition& partition);
void write_partition_file(const std::string& path, const Partition& partition);

} // namespace balancekit
