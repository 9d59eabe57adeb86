#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgf {

struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

inline constexpr int kMaxSmallVertices = 7;
inline constexpr int kMaxLabeledVertices = 16;

/// Labeled simple graph on at most 16 vertices; rows are adjacency bit masks.
/// Used as scratch space for gluing, quotients, and spanning subgraphs before
/// they are canonicalized.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(int vertex_count);

  int vertex_count() const { return n_; }
  int edge_count() const;
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1u; }
  std::uint16_t row(int v) const { return adj_[v]; }
  int degree(int v) const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  std::vector<std::pair<int, int>> edges() const;
  LabeledGraph without_vertex(int v) const;
  /// Identifies u and v; they must be non-adjacent.
  LabeledGraph merged(int u, int v) const;
  LabeledGraph disjoint_union(const LabeledGraph& other) const;
  LabeledGraph complement() const;
  LabeledGraph permuted(const std::vector<int>& new_label) const;

  bool is_connected() const;
  /// Connected components as vertex masks, ordered by smallest vertex.
  std::vector<std::uint16_t> component_masks() const;
  LabeledGraph induced(std::uint16_t vertex_mask) const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  int n_ = 0;
  std::array<std::uint16_t, kMaxLabeledVertices> adj_{};
};

/// Isomorphism-class key: vertex count in the top byte, canonical adjacency
/// code below. Ordering is by (v, code); SmallGraph adds e in between.
struct GraphKey {
  std::uint32_t value = 0;
  friend auto operator<=>(const GraphKey&, const GraphKey&) = default;
};

struct CanonicalLabeling;
CanonicalLabeling canonical_form(const LabeledGraph& g);

/// Canonical unlabeled graph on at most 7 vertices.
///
/// The canonical code is the upper-triangle adjacency bit string (graph6 pair
/// order, first pair most significant) minimized over every relabeling that
/// respects an iso-invariant refinement of the degree partition. Isomorphic
/// inputs give identical codes; non-isomorphic inputs give distinct codes.
class SmallGraph {
 public:
  SmallGraph() = default;  // the empty graph

  /// Throws SizeLimitError above 7 vertices.
  static SmallGraph from(const LabeledGraph& g);

  int vertex_count() const { return v_; }
  int edge_count() const { return e_; }
  long aut_count() const { return aut_; }
  bool is_connected() const { return connected_; }
  /// No isolated vertices; the empty graph counts as NIV.
  bool is_niv() const { return isolated_ == 0; }
  int isolated_count() const { return isolated_; }
  bool is_empty() const { return v_ == 0; }

  std::uint32_t code() const { return code_; }
  GraphKey key() const { return GraphKey{(static_cast<std::uint32_t>(v_) << 24) | code_}; }
  /// graph6 text of the canonical labeling.
  std::string canonical_code() const;
  /// The canonical labeling itself.
  LabeledGraph labeled() const;

  /// Connected components, ordered by (v, e, code).
  std::vector<SmallGraph> components() const;
  /// The graph with isolated vertices removed.
  SmallGraph core() const;
  SmallGraph disjoint_union(const SmallGraph& other) const;

  /// Friendly alias when one exists (K3, P2, 2K2, ...), otherwise canonical_code().
  std::string name() const;

  friend CanonicalLabeling canonical_form(const LabeledGraph& g);

  friend bool operator==(const SmallGraph& a, const SmallGraph& b) {
    return a.v_ == b.v_ && a.code_ == b.code_;
  }
  /// (v, e, code): a linear extension of the subgraph order.
  friend std::strong_ordering operator<=>(const SmallGraph& a, const SmallGraph& b) {
    if (auto c = a.v_ <=> b.v_; c != 0) return c;
    if (auto c = a.e_ <=> b.e_; c != 0) return c;
    return a.code_ <=> b.code_;
  }

 private:
  int v_ = 0;
  int e_ = 0;
  long aut_ = 1;
  bool connected_ = false;
  int isolated_ = 0;
  std::uint32_t code_ = 0;
};

/// Upper-triangle pair index in graph6 order: (0,1),(0,2),(1,2),(0,3),...
constexpr int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

/// Result of canonicalization: the canonical graph plus a relabeling
/// new_label[v] taking the input onto the canonical labeling.
struct CanonicalLabeling {
  SmallGraph graph;
  std::vector<int> new_label;
};
CanonicalLabeling canonical_form(const LabeledGraph& g);

/// Alias graphs: K1..K7, P2, P3, C3..C5, K13, 2K2, paw, diamond, K2+P2, K2+K3.
/// Returns false when the token is not an alias.
bool lookup_alias(const std::string& token, SmallGraph& out);

/// Graph token: an alias or "g6:<graph6>". Throws std::invalid_argument.
SmallGraph parse_graph_token(const std::string& token);

SmallGraph complete_graph(int k);
SmallGraph path_graph(int edges);
SmallGraph cycle_graph(int k);
SmallGraph star_graph(int leaves);
SmallGraph empty_graph(int vertices);

/// H / P for a partition given as part labels (part[v] = part index). Parts
/// must not contain adjacent vertices (std::invalid_argument otherwise).
SmallGraph quotient(const SmallGraph& h, const std::vector<int>& part);
LabeledGraph quotient(const LabeledGraph& h, const std::vector<int>& part);

}  // namespace sgf
