#pragma once

#include <string>
#include <vector>

#include "sgf/small_graph.hpp"

namespace sgf {

/// Every isomorphism class on at most 7 vertices (1253 graphs including the
/// empty graph), sorted by (v, e, code). Built once, read-only afterwards.
const std::vector<SmallGraph>& catalog();

/// Position of g in catalog().
int catalog_index(const SmallGraph& g);

/// H1 ⪯ H2: H1 is reachable from H2 by edge deletions, vertex deletions and
/// merges of two vertices lying in different components.
bool precedes(const SmallGraph& h1, const SmallGraph& h2);

/// All H' ⪯ H, in catalog order.
std::vector<SmallGraph> down_set(const SmallGraph& h);

/// All NIV H' ⪯ H (the empty graph included), in catalog order.
std::vector<SmallGraph> niv_down_set(const SmallGraph& h);

/// Connected graphs on exactly k vertices, in catalog order.
std::vector<SmallGraph> connected_graphs(int k);

struct GraphFamily {
  std::vector<SmallGraph> members;  // catalog order, distinct
  bool downwards_closed = false;

  std::size_t size() const { return members.size(); }
  int index_of(const SmallGraph& h) const;  // -1 if absent
  std::string selector() const;             // comma-joined member names
};

/// True when every connected non-K1 H' ⪯ H of every member is a member.
bool is_downwards_closed(const std::vector<SmallGraph>& members);

/// Comma-separated tokens. "C<k>" means every connected k-vertex graph; any
/// other token is a graph token (alias or g6:...). "Cyc<k>" names the k-cycle.
/// Throws std::invalid_argument on an unknown token.
GraphFamily family(const std::string& selector);
GraphFamily make_family(std::vector<SmallGraph> members);

}  // namespace sgf
