#include "sgf/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "sgf/counting.hpp"
#include "sgf/enumerate.hpp"
#include "sgf/factor_map.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/parallel.hpp"
#include "sgf/proportional.hpp"

namespace sgf {

namespace {

SmallGraph alias(const char* name) {
  SmallGraph g;
  lookup_alias(name, g);
  return g;
}

HostGraph host_from_mask(int n, std::uint64_t mask) {
  HostGraph g(n);
  const auto order = edge_order(n);
  for (std::size_t k = 0; k < order.size(); ++k)
    if ((mask >> k) & 1u) g.add_edge(order[k].first, order[k].second);
  return g;
}

void verify_all(SearchResult& out, const ProblemContext& ctx, const GraphFamily& family) {
  for (const std::string& text : out.graphs) {
    if (!is_hat_proportional(graph6_parse(text), ctx.p, family))
      throw std::logic_error("search returned a graph that is not proportional: " + text);
    ++out.verified;
  }
}

SearchResult exhaustive(const ProblemContext& ctx, const GraphFamily& family, const SearchOptions& options) {
  if (ctx.n > 8) throw SizeLimitError("exhaustive search supports n <= 8");
  const SmallGraph k2 = alias("K2"), p2 = alias("P2"), k3 = alias("K3");
  for (const SmallGraph& h : family.members)
    if (!(h == k2 || h == p2 || h == k3)) throw std::invalid_argument("exhaustive search supports members K2, P2, K3");
  FactorMap map(family, ctx);
  SearchResult out;
  std::vector<BigRational> target = map.x_from_g(std::vector<BigRational>(family.size(), 0));
  for (const BigRational& t : target)
    if (!is_integer(t)) {
      out.note = "the counts at g = 0 are not all integers, so no graph qualifies";
      return out;
    }
  // -1 marks a statistic outside the family
  long want_e = -1, want_c = -1, want_t = -1;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const long v = target[i].get_num().get_si();
    if (family.members[i] == k2) want_e = v;
    if (family.members[i] == p2) want_c = v;
    if (family.members[i] == k3) want_t = v;
  }
  const int n = static_cast<int>(ctx.n);
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  constexpr std::uint64_t kShard = std::uint64_t{1} << 20;
  const std::uint64_t shards = (total + kShard - 1) / kShard;
  std::vector<std::vector<std::uint64_t>> hits(shards);
  std::vector<std::uint64_t> counts(shards, 0);
  parallel_shards(shards, options.workers, [&](std::uint64_t s) {
    gray_enumerate(n, s * kShard, (s + 1) * kShard, [&](std::uint64_t mask, const std::uint32_t*, const SmallCounts& c) {
      if ((want_e < 0 || c.edges == want_e) && (want_c < 0 || c.cherries == want_c) &&
          (want_t < 0 || c.triangles == want_t)) {
        ++counts[s];
        if (options.collect) hits[s].push_back(mask);
      }
    });
  });
  for (std::uint64_t s = 0; s < shards; ++s) {
    out.count += counts[s];
    std::sort(hits[s].begin(), hits[s].end());
    for (std::uint64_t mask : hits[s]) out.graphs.push_back(graph6_emit(host_from_mask(n, mask)));
  }
  if (options.verify) verify_all(out, ctx, family);
  return out;
}

/// sum_H (b^{e(H)} g_H)^2 from the motif counts.
struct Energy {
  const GraphFamily& family;
  const FactorMap& map;
  BigInt b;
  bool with_four;

  double operator()(const HostGraph& g, bool& zero) const {
    MotifCounts m = count_motifs(g, with_four);
    std::vector<BigRational> x;
    for (const SmallGraph& h : family.members) x.emplace_back(BigInt(static_cast<long>(motif_value(m, h))));
    std::vector<BigRational> gv = map.g_from_x(x);
    double total = 0;
    zero = true;
    for (std::size_t i = 0; i < gv.size(); ++i) {
      if (gv[i] != 0) zero = false;
      BigInt scale;
      mpz_pow_ui(scale.get_mpz_t(), b.get_mpz_t(), family.members[i].edge_count());
      const double v = BigRational(gv[i] * scale).get_d();
      total += v * v;
    }
    return total;
  }
};

SearchResult anneal(const ProblemContext& ctx, const GraphFamily& family, const SearchOptions& options) {
  for (const SmallGraph& h : family.members)
    if (!motif_supported(h)) throw std::invalid_argument("anneal supports connected members on 2..4 vertices");
  FactorMap map(family, ctx);
  const int n = static_cast<int>(ctx.n);
  const BigRational edges_q = ctx.p * BigRational(binom(BigInt(n), 2));
  if (!is_integer(edges_q)) throw NoSolutionError("p C(n,2) is not an integer, so no graph has g_K2 = 0");
  const long edges = edges_q.get_num().get_si();
  bool with_four = false;
  for (const SmallGraph& h : family.members) with_four = with_four || h.vertex_count() == 4;
  Energy energy{family, map, ctx.b(), with_four};

  std::mt19937_64 rng(shard_seed(options.seed, 0));
  const auto pairs = edge_order(n);
  SearchResult out;
  std::set<std::string> seen;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long spent = 0;
  while (spent < options.budget && static_cast<long>(seen.size()) < options.want) {
    // restart from a uniform graph with the forced edge count
    std::vector<std::size_t> idx(pairs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    HostGraph g(n);
    std::vector<std::pair<int, int>> on, off;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (static_cast<long>(i) < edges) {
        g.add_edge(pairs[idx[i]].first, pairs[idx[i]].second);
        on.push_back(pairs[idx[i]]);
      } else {
        off.push_back(pairs[idx[i]]);
      }
    }
    if (on.empty() || off.empty()) break;
    bool zero = false;
    double cur = energy(g, zero);
    double temp = std::max(1.0, cur / 10);
    const long sweep = std::min(options.budget - spent, 20'000L * n);
    for (long it = 0; it < sweep && static_cast<long>(seen.size()) < options.want; ++it, ++spent) {
      if (zero) {
        std::string text = graph6_emit(g);
        if (seen.insert(text).second) out.graphs.push_back(text);
        temp = std::max(temp, 4.0);
      }
      std::uniform_int_distribution<std::size_t> pick_on(0, on.size() - 1), pick_off(0, off.size() - 1);
      const std::size_t i = pick_on(rng), j = pick_off(rng);
      g.remove_edge(on[i].first, on[i].second);
      g.add_edge(off[j].first, off[j].second);
      bool next_zero = false;
      const double next = energy(g, next_zero);
      if (next <= cur || unit(rng) < std::exp((cur - next) / temp)) {
        std::swap(on[i], off[j]);
        cur = next;
        zero = next_zero;
      } else {
        g.remove_edge(off[j].first, off[j].second);
        g.add_edge(on[i].first, on[i].second);
      }
      temp = std::max(0.05, temp * 0.9995);
    }
  }
  out.count = out.graphs.size();
  if (out.graphs.empty())
    throw NoSolutionError("no proportional graph found within " + std::to_string(options.budget) + " proposals");
  if (options.verify) verify_all(out, ctx, family);
  return out;
}

}  // namespace

SearchResult search_proportional(const ProblemContext& ctx, const GraphFamily& family, const SearchOptions& options) {
  return options.mode == SearchMode::Exhaustive ? exhaustive(ctx, family, options) : anneal(ctx, family, options);
}

}  // namespace sgf
