#include "sgf/small_graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "sgf/host_graph.hpp"

namespace sgf {

LabeledGraph::LabeledGraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0 || vertex_count > kMaxLabeledVertices)
    throw SizeLimitError("labeled graph limited to 16 vertices, got " + std::to_string(vertex_count));
}

int LabeledGraph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += std::popcount(adj_[v]);
  return total / 2;
}

int LabeledGraph::degree(int v) const { return std::popcount(adj_[v]); }

void LabeledGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self loop");
  adj_[u] |= static_cast<std::uint16_t>(1u << v);
  adj_[v] |= static_cast<std::uint16_t>(1u << u);
}

void LabeledGraph::remove_edge(int u, int v) {
  adj_[u] &= static_cast<std::uint16_t>(~(1u << v));
  adj_[v] &= static_cast<std::uint16_t>(~(1u << u));
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

LabeledGraph LabeledGraph::without_vertex(int v) const {
  LabeledGraph out(n_ - 1);
  for (int i = 0; i < n_; ++i) {
    if (i == v) continue;
    for (int j = i + 1; j < n_; ++j) {
      if (j == v || !adjacent(i, j)) continue;
      out.add_edge(i - (i > v), j - (j > v));
    }
  }
  return out;
}

LabeledGraph LabeledGraph::merged(int u, int v) const {
  if (u == v || adjacent(u, v)) throw std::invalid_argument("merge needs two distinct non-adjacent vertices");
  if (u > v) std::swap(u, v);
  LabeledGraph out = without_vertex(v);
  for (int w = 0; w < n_; ++w)
    if (adjacent(v, w)) out.add_edge(u, w - (w > v));
  return out;
}

LabeledGraph LabeledGraph::disjoint_union(const LabeledGraph& other) const {
  LabeledGraph out(n_ + other.n_);
  for (auto [i, j] : edges()) out.add_edge(i, j);
  for (auto [i, j] : other.edges()) out.add_edge(n_ + i, n_ + j);
  return out;
}

LabeledGraph LabeledGraph::complement() const {
  LabeledGraph out(n_);
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (!adjacent(i, j)) out.add_edge(i, j);
  return out;
}

LabeledGraph LabeledGraph::permuted(const std::vector<int>& new_label) const {
  LabeledGraph out(n_);
  for (auto [i, j] : edges()) out.add_edge(new_label[i], new_label[j]);
  return out;
}

std::vector<std::uint16_t> LabeledGraph::component_masks() const {
  std::vector<std::uint16_t> out;
  std::uint16_t seen = 0;
  for (int s = 0; s < n_; ++s) {
    if ((seen >> s) & 1u) continue;
    std::uint16_t comp = static_cast<std::uint16_t>(1u << s), frontier = comp;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint16_t fresh = adj_[v] & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

bool LabeledGraph::is_connected() const { return n_ > 0 && component_masks().size() == 1; }

LabeledGraph LabeledGraph::induced(std::uint16_t vertex_mask) const {
  std::vector<int> index(n_, -1);
  int k = 0;
  for (int v = 0; v < n_; ++v)
    if ((vertex_mask >> v) & 1u) index[v] = k++;
  LabeledGraph out(k);
  for (auto [i, j] : edges())
    if (index[i] >= 0 && index[j] >= 0) out.add_edge(index[i], index[j]);
  return out;
}

namespace {

/// Iterated colour refinement starting from degrees. Colours are dense ranks
/// of (old colour, sorted neighbour colours), hence relabeling-invariant.
std::vector<int> refine_colours(const LabeledGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
  int classes = 0;
  {
    std::vector<int> sorted = colour;
    std::sort(sorted.begin(), sorted.end());
    classes = static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    for (int& c : colour) c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.begin() + classes, c) - sorted.begin());
  }
  while (true) {
    std::vector<std::vector<int>> signature(n);
    for (int v = 0; v < n; ++v) {
      signature[v].push_back(colour[v]);
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (g.adjacent(v, w)) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      signature[v].insert(signature[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[v]) - distinct.begin());
    if (static_cast<int>(distinct.size()) == classes) break;
    classes = static_cast<int>(distinct.size());
  }
  return colour;
}

struct CanonSearch {
  const LabeledGraph* g = nullptr;
  int n = 0;
  std::vector<int> slot_colour;  // colour required at each position
  std::vector<int> colour;
  std::vector<int> at;           // vertex placed at position
  std::uint32_t best = 0;
  bool have_best = false;
  long best_count = 0;
  std::vector<int> best_at;

  // Prefix of the code after positions 0..k are placed is the top
  // k(k+1)/2 bits; the code is compared prefix-wise to prune.
  void run(int k, std::uint32_t prefix, std::uint16_t used) {
    if (k == n) {
      if (!have_best || prefix < best) {
        best = prefix;
        have_best = true;
        best_count = 1;
        best_at = at;
      } else if (prefix == best) {
        ++best_count;
      }
      return;
    }
    const int total = n * (n - 1) / 2;
    const int width = (k + 1) * k / 2;
    for (int u = 0; u < n; ++u) {
      if ((used >> u) & 1u || colour[u] != slot_colour[k]) continue;
      std::uint32_t next = prefix;
      for (int i = 0; i < k; ++i) next = (next << 1) | (g->adjacent(at[i], u) ? 1u : 0u);
      if (have_best) {
        std::uint32_t best_prefix = best >> (total - width);
        if (next > best_prefix) continue;
      }
      at[k] = u;
      run(k + 1, next, static_cast<std::uint16_t>(used | (1u << u)));
    }
  }
};

}  // namespace

CanonicalLabeling canonical_form(const LabeledGraph& g) {
  const int n = g.vertex_count();
  if (n > kMaxSmallVertices)
    throw SizeLimitError("canonical form limited to 7 vertices, got " + std::to_string(n));
  CanonSearch search;
  search.g = &g;
  search.n = n;
  search.colour = refine_colours(g);
  search.slot_colour = search.colour;
  std::sort(search.slot_colour.begin(), search.slot_colour.end());
  search.at.assign(n, -1);
  search.run(0, 0, 0);

  CanonicalLabeling out;
  out.new_label.assign(n, 0);
  for (int pos = 0; pos < n; ++pos) out.new_label[search.best_at[pos]] = pos;
  SmallGraph& h = out.graph;
  h.v_ = n;
  h.e_ = g.edge_count();
  h.code_ = search.best;
  h.aut_ = n == 0 ? 1 : search.best_count;
  h.connected_ = g.is_connected();
  h.isolated_ = 0;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) == 0) ++h.isolated_;
  return out;
}

SmallGraph SmallGraph::from(const LabeledGraph& g) { return canonical_form(g).graph; }

LabeledGraph SmallGraph::labeled() const {
  LabeledGraph g(v_);
  const int total = v_ * (v_ - 1) / 2;
  for (int j = 1; j < v_; ++j)
    for (int i = 0; i < j; ++i)
      if ((code_ >> (total - 1 - pair_index(i, j))) & 1u) g.add_edge(i, j);
  return g;
}

std::string SmallGraph::canonical_code() const { return graph6_emit(labeled()); }

std::vector<SmallGraph> SmallGraph::components() const {
  LabeledGraph g = labeled();
  std::vector<SmallGraph> out;
  for (std::uint16_t mask : g.component_masks()) out.push_back(from(g.induced(mask)));
  std::sort(out.begin(), out.end());
  return out;
}

SmallGraph SmallGraph::core() const {
  LabeledGraph g = labeled();
  std::uint16_t keep = 0;
  for (int v = 0; v < v_; ++v)
    if (g.degree(v) > 0) keep |= static_cast<std::uint16_t>(1u << v);
  return from(g.induced(keep));
}

SmallGraph SmallGraph::disjoint_union(const SmallGraph& other) const {
  return from(labeled().disjoint_union(other.labeled()));
}

SmallGraph complete_graph(int k) {
  LabeledGraph g(k);
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i) g.add_edge(i, j);
  return SmallGraph::from(g);
}

SmallGraph path_graph(int edges) {
  LabeledGraph g(edges + 1);
  for (int i = 0; i < edges; ++i) g.add_edge(i, i + 1);
  return SmallGraph::from(g);
}

SmallGraph cycle_graph(int k) {
  if (k < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  LabeledGraph g(k);
  for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
  return SmallGraph::from(g);
}

SmallGraph star_graph(int leaves) {
  LabeledGraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return SmallGraph::from(g);
}

SmallGraph empty_graph(int vertices) { return SmallGraph::from(LabeledGraph(vertices)); }

namespace {

const std::vector<std::pair<std::string, SmallGraph>>& alias_table() {
  static const std::vector<std::pair<std::string, SmallGraph>> table = [] {
    std::vector<std::pair<std::string, SmallGraph>> t;
    t.emplace_back("empty", SmallGraph());
    for (int k = 1; k <= 7; ++k) t.emplace_back("K" + std::to_string(k), complete_graph(k));
    t.emplace_back("P2", path_graph(2));
    t.emplace_back("P3", path_graph(3));
    t.emplace_back("P4", path_graph(4));
    t.emplace_back("C4", cycle_graph(4));
    t.emplace_back("C5", cycle_graph(5));
    t.emplace_back("K13", star_graph(3));
    t.emplace_back("K14", star_graph(4));
    t.emplace_back("2K2", path_graph(1).disjoint_union(path_graph(1)));
    LabeledGraph paw(4);
    paw.add_edge(0, 1);
    paw.add_edge(1, 2);
    paw.add_edge(0, 2);
    paw.add_edge(2, 3);
    t.emplace_back("paw", SmallGraph::from(paw));
    LabeledGraph diamond = complete_graph(4).labeled();
    diamond.remove_edge(0, 1);
    t.emplace_back("diamond", SmallGraph::from(diamond));
    t.emplace_back("K2+P2", path_graph(1).disjoint_union(path_graph(2)));
    t.emplace_back("K2+K3", path_graph(1).disjoint_union(complete_graph(3)));
    t.emplace_back("3K2", path_graph(1).disjoint_union(path_graph(1)).disjoint_union(path_graph(1)));
    t.emplace_back("2P2", path_graph(2).disjoint_union(path_graph(2)));
    return t;
  }();
  return table;
}

}  // namespace

bool lookup_alias(const std::string& token, SmallGraph& out) {
  if (token == "C3") {
    out = complete_graph(3);
    return true;
  }
  for (const auto& [name, g] : alias_table()) {
    if (name == token) {
      out = g;
      return true;
    }
  }
  return false;
}

std::string SmallGraph::name() const {
  for (const auto& [alias, g] : alias_table())
    if (g == *this) return alias;
  return "g6:" + canonical_code();
}

SmallGraph parse_graph_token(const std::string& token) {
  SmallGraph out;
  if (lookup_alias(token, out)) return out;
  if (token.rfind("g6:", 0) == 0) {
    HostGraph h = graph6_parse(token.substr(3));
    if (h.n() > kMaxSmallVertices)
      throw SizeLimitError("graph token '" + token + "' has more than 7 vertices");
    LabeledGraph g(h.n());
    for (int j = 1; j < h.n(); ++j)
      for (int i = 0; i < j; ++i)
        if (h.adjacent(i, j)) g.add_edge(i, j);
    return SmallGraph::from(g);
  }
  throw std::invalid_argument("unknown graph token '" + token + "'");
}

LabeledGraph quotient(const LabeledGraph& h, const std::vector<int>& part) {
  const int n = h.vertex_count();
  if (static_cast<int>(part.size()) != n) throw std::invalid_argument("partition size mismatch");
  // Relabel parts densely by first occurrence.
  std::map<int, int> dense;
  for (int v = 0; v < n; ++v) dense.emplace(part[v], static_cast<int>(dense.size()));
  std::vector<int> block(n);
  for (int v = 0; v < n; ++v) block[v] = dense.at(part[v]);
  LabeledGraph out(static_cast<int>(dense.size()));
  for (auto [i, j] : h.edges()) {
    if (block[i] == block[j]) throw std::invalid_argument("invalid partition: adjacent vertices share a part");
    out.add_edge(block[i], block[j]);
  }
  return out;
}

SmallGraph quotient(const SmallGraph& h, const std::vector<int>& part) {
  return SmallGraph::from(quotient(h.labeled(), part));
}

}  // namespace sgf
