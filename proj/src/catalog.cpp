#include "sgf/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <unordered_map>

namespace sgf {

namespace {

struct Catalog {
  std::vector<SmallGraph> graphs;
  std::unordered_map<std::uint32_t, int> index;
  std::vector<std::vector<std::uint64_t>> down;  // bitset over catalog indices
  int words = 0;

  int find(const SmallGraph& g) const {
    auto it = index.find(g.key().value);
    if (it == index.end()) throw SizeLimitError("graph not in the 7-vertex catalog");
    return it->second;
  }
};

std::vector<SmallGraph> immediate_predecessors(const SmallGraph& h) {
  std::vector<SmallGraph> out;
  LabeledGraph g = h.labeled();
  const int n = g.vertex_count();
  for (auto [i, j] : g.edges()) {
    LabeledGraph c = g;
    c.remove_edge(i, j);
    out.push_back(SmallGraph::from(c));
  }
  for (int v = 0; v < n; ++v) out.push_back(SmallGraph::from(g.without_vertex(v)));
  // merges only join vertices lying in different components
  std::vector<int> comp(n, 0);
  auto masks = g.component_masks();
  for (int c = 0; c < static_cast<int>(masks.size()); ++c)
    for (int v = 0; v < n; ++v)
      if ((masks[c] >> v) & 1u) comp[v] = c;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (comp[i] != comp[j]) out.push_back(SmallGraph::from(g.merged(i, j)));
  return out;
}

Catalog build_catalog() {
  Catalog cat;
  std::vector<SmallGraph> level{SmallGraph()};
  cat.graphs.push_back(SmallGraph());
  for (int k = 1; k <= kMaxSmallVertices; ++k) {
    std::unordered_map<std::uint32_t, SmallGraph> next;
    for (const SmallGraph& base : level) {
      LabeledGraph g = base.labeled();
      for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        LabeledGraph ext(k);
        for (auto [i, j] : g.edges()) ext.add_edge(i, j);
        for (int i = 0; i < k - 1; ++i)
          if ((mask >> i) & 1u) ext.add_edge(i, k - 1);
        SmallGraph s = SmallGraph::from(ext);
        next.emplace(s.code(), s);
      }
    }
    level.clear();
    for (auto& [code, s] : next) level.push_back(s);
    std::sort(level.begin(), level.end());
    cat.graphs.insert(cat.graphs.end(), level.begin(), level.end());
  }
  std::sort(cat.graphs.begin(), cat.graphs.end());
  for (int i = 0; i < static_cast<int>(cat.graphs.size()); ++i) cat.index.emplace(cat.graphs[i].key().value, i);

  // Predecessors under any single move sort strictly earlier in (v, e), so
  // one pass in catalog order closes the relation.
  cat.words = static_cast<int>((cat.graphs.size() + 63) / 64);
  cat.down.assign(cat.graphs.size(), std::vector<std::uint64_t>(cat.words, 0));
  for (int i = 0; i < static_cast<int>(cat.graphs.size()); ++i) {
    auto& bits = cat.down[i];
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
    for (const SmallGraph& c : immediate_predecessors(cat.graphs[i])) {
      const auto& sub = cat.down[cat.find(c)];
      for (int w = 0; w < cat.words; ++w) bits[w] |= sub[w];
    }
  }
  return cat;
}

const Catalog& the_catalog() {
  static const Catalog cat = build_catalog();
  return cat;
}

bool has_bit(const std::vector<std::uint64_t>& bits, int i) { return (bits[i >> 6] >> (i & 63)) & 1u; }

}  // namespace

const std::vector<SmallGraph>& catalog() { return the_catalog().graphs; }

int catalog_index(const SmallGraph& g) { return the_catalog().find(g); }

bool precedes(const SmallGraph& h1, const SmallGraph& h2) {
  const Catalog& cat = the_catalog();
  return has_bit(cat.down[cat.find(h2)], cat.find(h1));
}

std::vector<SmallGraph> down_set(const SmallGraph& h) {
  const Catalog& cat = the_catalog();
  const auto& bits = cat.down[cat.find(h)];
  std::vector<SmallGraph> out;
  for (int i = 0; i < static_cast<int>(cat.graphs.size()); ++i)
    if (has_bit(bits, i)) out.push_back(cat.graphs[i]);
  return out;
}

std::vector<SmallGraph> niv_down_set(const SmallGraph& h) {
  std::vector<SmallGraph> out;
  for (const SmallGraph& g : down_set(h))
    if (g.is_niv()) out.push_back(g);
  return out;
}

std::vector<SmallGraph> connected_graphs(int k) {
  if (k < 1 || k > kMaxSmallVertices) throw std::invalid_argument("connected class C" + std::to_string(k) + " out of range");
  std::vector<SmallGraph> out;
  for (const SmallGraph& g : catalog())
    if (g.vertex_count() == k && g.is_connected()) out.push_back(g);
  return out;
}

bool is_downwards_closed(const std::vector<SmallGraph>& members) {
  for (const SmallGraph& h : members) {
    if (!h.is_connected() || h.vertex_count() < 2) return false;
    for (const SmallGraph& sub : down_set(h)) {
      if (!sub.is_connected() || sub.vertex_count() < 2) continue;
      if (std::find(members.begin(), members.end(), sub) == members.end()) return false;
    }
  }
  return true;
}

int GraphFamily::index_of(const SmallGraph& h) const {
  auto it = std::find(members.begin(), members.end(), h);
  return it == members.end() ? -1 : static_cast<int>(it - members.begin());
}

std::string GraphFamily::selector() const {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < members.size()) {
    const int k = members[i].vertex_count();
    std::size_t j = i;
    while (j < members.size() && members[j].vertex_count() == k) ++j;
    bool whole_class = false;
    if (k >= 1 && k <= kMaxSmallVertices) {
      auto cls = connected_graphs(k);
      whole_class = std::equal(members.begin() + i, members.begin() + j, cls.begin(), cls.end());
    }
    if (whole_class && k >= 2) {
      parts.push_back("C" + std::to_string(k));
    } else {
      for (std::size_t t = i; t < j; ++t) parts.push_back(members[t].name());
    }
    i = j;
  }
  std::string out;
  for (std::size_t t = 0; t < parts.size(); ++t) out += (t ? "," : "") + parts[t];
  return out;
}

GraphFamily make_family(std::vector<SmallGraph> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  GraphFamily fam;
  fam.downwards_closed = is_downwards_closed(members);
  fam.members = std::move(members);
  return fam;
}

GraphFamily family(const std::string& selector) {
  std::vector<SmallGraph> members;
  std::stringstream ss(selector);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }), token.end());
    if (token.empty()) continue;
    if (token.size() == 2 && token[0] == 'C' && std::isdigit(static_cast<unsigned char>(token[1]))) {
      auto cls = connected_graphs(token[1] - '0');
      members.insert(members.end(), cls.begin(), cls.end());
    } else if (token.rfind("Cyc", 0) == 0) {
      int k = std::stoi(token.substr(3));
      members.push_back(cycle_graph(k));
    } else {
      members.push_back(parse_graph_token(token));
    }
  }
  if (members.empty()) throw std::invalid_argument("empty family selector");
  return make_family(std::move(members));
}

}  // namespace sgf
