#include "sgf/counting.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace sgf {

namespace {

BigInt from_u128(unsigned __int128 x) {
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return (hi << 64) + lo;
}

struct EmbeddingPlan {
  int k = 0;
  std::vector<int> order;                  // H vertex at each level
  std::vector<std::vector<int>> back;      // earlier levels adjacent in H
  std::vector<int> degree;                 // H degree per level
};

EmbeddingPlan plan_for(const LabeledGraph& h) {
  EmbeddingPlan plan;
  plan.k = h.vertex_count();
  std::vector<bool> placed(plan.k, false);
  for (int step = 0; step < plan.k; ++step) {
    int best = -1, best_links = -1, best_deg = -1;
    for (int v = 0; v < plan.k; ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (int u : plan.order) links += h.adjacent(u, v);
      int d = h.degree(v);
      if (links > best_links || (links == best_links && d > best_deg)) {
        best = v;
        best_links = links;
        best_deg = d;
      }
    }
    placed[best] = true;
    plan.order.push_back(best);
  }
  plan.back.resize(plan.k);
  for (int lvl = 0; lvl < plan.k; ++lvl) {
    for (int prev = 0; prev < lvl; ++prev)
      if (h.adjacent(plan.order[prev], plan.order[lvl])) plan.back[lvl].push_back(prev);
    plan.degree.push_back(h.degree(plan.order[lvl]));
  }
  return plan;
}

struct EmbeddingCounter {
  const HostGraph& g;
  const EmbeddingPlan& plan;
  int words;
  std::vector<std::vector<std::uint64_t>> degmask;  // vertices of degree >= d
  std::vector<std::uint64_t> used;
  std::vector<std::vector<std::uint64_t>> cand;
  std::vector<int> image;
  unsigned __int128 total = 0;

  EmbeddingCounter(const HostGraph& host, const EmbeddingPlan& p)
      : g(host), plan(p), words(host.words()) {
    int maxdeg = 0;
    for (int d : plan.degree) maxdeg = std::max(maxdeg, d);
    degmask.assign(maxdeg + 1, std::vector<std::uint64_t>(words, 0));
    for (int v = 0; v < g.n(); ++v) {
      int d = std::min(g.degree(v), maxdeg);
      for (int t = 0; t <= d; ++t) degmask[t][v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    used.assign(words, 0);
    cand.assign(plan.k, std::vector<std::uint64_t>(words, 0));
    image.assign(plan.k, -1);
  }

  void fill(int lvl) {
    auto& c = cand[lvl];
    const auto& dm = degmask[plan.degree[lvl]];
    for (int w = 0; w < words; ++w) c[w] = dm[w] & ~used[w];
    for (int prev : plan.back[lvl]) {
      const std::uint64_t* r = g.row(image[prev]);
      for (int w = 0; w < words; ++w) c[w] &= r[w];
    }
  }

  void run(int lvl) {
    fill(lvl);
    const auto& c = cand[lvl];
    if (lvl == plan.k - 1) {
      for (int w = 0; w < words; ++w) total += std::popcount(c[w]);
      return;
    }
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = c[w];
      while (bits) {
        int v = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        image[lvl] = v;
        used[v >> 6] |= std::uint64_t{1} << (v & 63);
        run(lvl + 1);
        used[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      }
    }
  }
};

void check_limits(const SmallGraph& h, const HostGraph& g) {
  const int limit = g.n() <= 64 ? kMaxSmallVertices : 5;
  if (h.vertex_count() > limit)
    throw SizeLimitError("subgraph counting limited to " + std::to_string(limit) + "-vertex patterns at n = " +
                         std::to_string(g.n()));
}

}  // namespace

BigInt count_injective(const SmallGraph& h, const HostGraph& g) {
  check_limits(h, g);
  if (h.vertex_count() == 0) return 1;
  if (h.vertex_count() > g.n()) return 0;
  EmbeddingPlan plan = plan_for(h.labeled());
  EmbeddingCounter counter(g, plan);
  counter.run(0);
  return from_u128(counter.total);
}

BigInt count_subgraph_copies(const SmallGraph& h, const HostGraph& g) {
  BigInt inj = count_injective(h, g);
  return inj / h.aut_count();
}

BigInt count_injective_naive(const SmallGraph& h, const HostGraph& g) {
  const int k = h.vertex_count(), n = g.n();
  if (k > n) return 0;
  LabeledGraph lh = h.labeled();
  auto edges = lh.edges();
  std::vector<int> image(k, -1);
  std::vector<bool> taken(n, false);
  BigInt total = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      for (auto [a, b] : edges)
        if (!g.adjacent(image[a], image[b])) return;
      ++total;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (taken[v]) continue;
      taken[v] = true;
      image[i] = v;
      rec(i + 1);
      taken[v] = false;
    }
  };
  rec(0);
  return total;
}

MotifCounts count_motifs(const HostGraph& g, bool with_four) {
  const int n = g.n(), words = g.words();
  MotifCounts m;
  std::vector<std::int64_t> deg(n), tri_at(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  m.k2 = g.edge_count();
  std::int64_t tri3 = 0, p3_raw = 0, diamond = 0, k4_6 = 0;
  std::vector<std::uint64_t> common(words);
  for (int u = 0; u < n; ++u) {
    const std::uint64_t* ru = g.row(u);
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = ru[w];
      // upper neighbours only
      if (w < (u >> 6)) continue;
      if (w == (u >> 6)) bits &= (u & 63) == 63 ? 0 : ~((std::uint64_t{2} << (u & 63)) - 1);
      while (bits) {
        int v = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* rv = g.row(v);
        std::int64_t codeg = 0;
        for (int t = 0; t < words; ++t) {
          common[t] = ru[t] & rv[t];
          codeg += std::popcount(common[t]);
        }
        tri3 += codeg;
        tri_at[u] += codeg;
        tri_at[v] += codeg;
        p3_raw += (deg[u] - 1) * (deg[v] - 1);
        if (with_four) {
          diamond += codeg * (codeg - 1) / 2;
          for (int t = 0; t < words; ++t) {
            std::uint64_t cb = common[t];
            while (cb) {
              int x = t * 64 + std::countr_zero(cb);
              cb &= cb - 1;
              const std::uint64_t* rx = g.row(x);
              for (int s = 0; s < words; ++s) k4_6 += std::popcount(rx[s] & common[s]);
            }
          }
        }
      }
    }
  }
  m.k3 = tri3 / 3;
  for (int v = 0; v < n; ++v) m.p2 += deg[v] * (deg[v] - 1) / 2;
  if (!with_four) return m;
  for (int v = 0; v < n; ++v) {
    m.k13 += deg[v] * (deg[v] - 1) * (deg[v] - 2) / 6;
    // tri_at[v] counts each triangle at v twice (once per incident edge of it)
    m.paw += (tri_at[v] / 2) * (deg[v] - 2);
  }
  m.p3 = p3_raw - 3 * m.k3;
  m.diamond = diamond;
  // each K4 is seen from 6 edges, and each inner edge twice
  m.k4 = k4_6 / 12;
  std::int64_t c4_2 = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      std::int64_t codeg = 0;
      for (int t = 0; t < words; ++t) codeg += std::popcount(g.row(u)[t] & g.row(v)[t]);
      c4_2 += codeg * (codeg - 1) / 2;
    }
  }
  m.c4 = c4_2 / 2;
  return m;
}

namespace {

struct MotifSlots {
  SmallGraph k2, p2, k3, k13, p3, c4, paw, diamond, k4;
};

const MotifSlots& motif_slots() {
  static const MotifSlots s = [] {
    MotifSlots t;
    lookup_alias("K2", t.k2);
    lookup_alias("P2", t.p2);
    lookup_alias("K3", t.k3);
    lookup_alias("K13", t.k13);
    lookup_alias("P3", t.p3);
    lookup_alias("C4", t.c4);
    lookup_alias("paw", t.paw);
    lookup_alias("diamond", t.diamond);
    lookup_alias("K4", t.k4);
    return t;
  }();
  return s;
}

}  // namespace

bool motif_supported(const SmallGraph& h) {
  return h.is_connected() && h.vertex_count() >= 2 && h.vertex_count() <= 4;
}

std::int64_t motif_value(const MotifCounts& m, const SmallGraph& h) {
  const MotifSlots& s = motif_slots();
  if (h == s.k2) return m.k2;
  if (h == s.p2) return m.p2;
  if (h == s.k3) return m.k3;
  if (h == s.k13) return m.k13;
  if (h == s.p3) return m.p3;
  if (h == s.c4) return m.c4;
  if (h == s.paw) return m.paw;
  if (h == s.diamond) return m.diamond;
  if (h == s.k4) return m.k4;
  throw std::invalid_argument("no motif formula for " + h.name());
}

void for_each_set_partition(int n, const std::function<bool(int, int)>& allowed,
                            const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> part(n, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      f(part);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (part[j] == b && !allowed(j, i)) ok = false;
      if (!ok) continue;
      part[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    f(part);
    return;
  }
  rec(0, 0);
}

namespace {

BigInt hom_injective_via_partitions(const SmallGraph& h, int n, std::map<std::uint32_t, BigInt>& memo,
                                    const std::function<BigInt(const SmallGraph&)>& connected_count) {
  auto it = memo.find(h.key().value);
  if (it != memo.end()) return it->second;
  BigInt result;
  if (h.vertex_count() == 0) {
    result = 1;
  } else if (h.vertex_count() == 1) {
    result = n;
  } else if (h.is_connected()) {
    result = connected_count(h) * h.aut_count();
  } else {
    LabeledGraph lh = h.labeled();
    std::vector<int> comp(lh.vertex_count());
    auto masks = lh.component_masks();
    for (int c = 0; c < static_cast<int>(masks.size()); ++c)
      for (int v = 0; v < lh.vertex_count(); ++v)
        if ((masks[c] >> v) & 1u) comp[v] = c;
    BigInt product = 1;
    for (std::uint16_t mask : masks) {
      SmallGraph part = SmallGraph::from(lh.induced(mask));
      product *= hom_injective_via_partitions(part, n, memo, connected_count);
    }
    BigInt rest = 0;
    for_each_set_partition(
        lh.vertex_count(), [&](int u, int v) { return comp[u] != comp[v]; },
        [&](const std::vector<int>& part) {
          int blocks = *std::max_element(part.begin(), part.end()) + 1;
          if (blocks == lh.vertex_count()) return;  // identity partition
          SmallGraph q = SmallGraph::from(quotient(lh, part));
          rest += hom_injective_via_partitions(q, n, memo, connected_count);
        });
    result = product - rest;
  }
  memo.emplace(h.key().value, result);
  return result;
}

}  // namespace

BigInt count_via_partitions(const SmallGraph& h, const HostGraph& g,
                            const std::function<BigInt(const SmallGraph&)>& connected_count) {
  std::map<std::uint32_t, BigInt> memo;
  return hom_injective_via_partitions(h, g.n(), memo, connected_count) / h.aut_count();
}

}  // namespace sgf
