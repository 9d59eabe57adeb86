#include "sgf/evaluation.hpp"

#include <cmath>
#include <functional>

#include "sgf/catalog.hpp"

namespace sgf {

namespace {

/// Counts injective maps V(H) -> V(G) by number of H edges landing on G edges.
std::vector<BigInt> embedding_histogram(const SmallGraph& h, const HostGraph& g) {
  const LabeledGraph lh = h.labeled();
  const int k = lh.vertex_count(), n = g.n(), e = lh.edge_count();
  std::vector<unsigned long long> hist(e + 1, 0);
  std::vector<int> image(k);
  std::vector<bool> taken(n, false);
  std::function<void(int, int)> rec = [&](int i, int present) {
    if (i == k) {
      ++hist[present];
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (taken[v]) continue;
      int add = 0;
      for (int j = 0; j < i; ++j)
        if (lh.adjacent(i, j) && g.adjacent(image[j], v)) ++add;
      taken[v] = true;
      image[i] = v;
      rec(i + 1, present + add);
      taken[v] = false;
    }
  };
  if (k <= n) rec(0, 0);
  std::vector<BigInt> out;
  for (auto c : hist) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

}  // namespace

BigRational host_weight(long edges, long pairs, const BigRational& p) {
  return pow(p, edges) * pow(1 - p, pairs - edges);
}

BigRational scaled_factor_direct(const SmallGraph& h, const HostGraph& g, const ProblemContext& ctx) {
  if (g.n() != ctx.n) throw std::invalid_argument("host has " + std::to_string(g.n()) + " vertices, context n = " + std::to_string(ctx.n));
  if (h.is_empty()) return 1;
  auto hist = embedding_histogram(h, g);
  const int e = h.edge_count();
  BigRational total = 0;
  for (int k = 0; k <= e; ++k) {
    if (hist[k] == 0) continue;
    total += BigRational(hist[k]) * pow(1 - ctx.p, k) * pow(-ctx.p, e - k);
  }
  return total / h.aut_count();
}

BigRational scaled_factor_value(const SmallGraph& h, const HostGraph& g, const ProblemContext& ctx) {
  if (g.n() != ctx.n) throw std::invalid_argument("host has " + std::to_string(g.n()) + " vertices, context n = " + std::to_string(ctx.n));
  if (h.is_empty()) return 1;
  if (h.vertex_count() == 2) {
    BigInt pairs = binom(BigInt(g.n()), 2);
    return BigRational(g.edge_count()) * (1 - ctx.p) - BigRational(pairs - g.edge_count()) * ctx.p;
  }
  if (g.n() <= 10) return scaled_factor_direct(h, g, ctx);
  FactorAlgebra algebra(ctx);
  HostStats stats(g, algebra);
  return stats.g(h);
}

double gamma_value(const SmallGraph& h, const BigRational& g_value, const ProblemContext& ctx) {
  return g_value.get_d() / std::pow(ctx.q().get_d(), h.edge_count() / 2.0);
}

DirectEvaluator::DirectEvaluator(const HostGraph& g, const ProblemContext& ctx) : host_(g), ctx_(ctx) {
  if (g.n() != ctx.n) throw std::invalid_argument("host size does not match context n");
}

BigInt DirectEvaluator::x(const SmallGraph& h) {
  auto it = x_.find(h.key().value);
  if (it != x_.end()) return it->second;
  BigInt v = count_subgraph_copies(h, host_);
  x_.emplace(h.key().value, v);
  return v;
}

BigRational DirectEvaluator::g(const SmallGraph& h) {
  auto it = g_.find(h.key().value);
  if (it != g_.end()) return it->second;
  BigRational v = scaled_factor_direct(h, host_, ctx_);
  g_.emplace(h.key().value, v);
  return v;
}

BigRational DirectEvaluator::evaluate(const StatVector& vec) {
  BigRational total = 0;
  for (const auto& [h, c] : vec.terms()) {
    BigRational value = 1;
    switch (vec.basis()) {
      case Basis::X: value = x(h); break;
      case Basis::G: value = g(h); break;
      case Basis::XStar:
        for (const SmallGraph& comp : h.components()) value *= x(comp);
        break;
      case Basis::GStar:
        for (const SmallGraph& comp : h.components()) value *= g(comp);
        break;
    }
    total += c * value;
  }
  return total;
}

HostStats::HostStats(const HostGraph& g, FactorAlgebra& algebra) : host_(g), algebra_(algebra) {
  if (g.n() != algebra.ctx().n) throw std::invalid_argument("host size does not match context n");
}

BigInt HostStats::connected(const SmallGraph& h) {
  if (h.vertex_count() == 1) return host_.n();
  if (motif_supported(h)) {
    if (!motifs_) motifs_ = count_motifs(host_, true);
    return static_cast<long>(motif_value(*motifs_, h));
  }
  return count_subgraph_copies(h, host_);
}

BigInt HostStats::x(const SmallGraph& h) {
  auto it = x_.find(h.key().value);
  if (it != x_.end()) return it->second;
  BigInt v;
  if (h.is_empty()) {
    v = 1;
  } else if (!h.is_niv()) {
    SmallGraph core = h.core();
    v = isolated_factor(host_.n(), core.vertex_count(), h.isolated_count()) * x(core);
  } else if (h.is_connected()) {
    v = connected(h);
  } else {
    v = count_via_partitions(h, host_, [this](const SmallGraph& c) { return connected(c); });
  }
  x_.emplace(h.key().value, v);
  return v;
}

BigInt HostStats::x_star(const SmallGraph& h) {
  BigInt v = 1;
  for (const SmallGraph& comp : h.components()) v *= x(comp);
  return v;
}

BigRational HostStats::g(const SmallGraph& h) {
  auto it = g_.find(h.key().value);
  if (it != g_.end()) return it->second;
  BigRational v = 0;
  const StatVector expansion = algebra_.expand_g_in_x(h);
  for (const auto& [k, c] : expansion.terms()) v += c * x(k);
  g_.emplace(h.key().value, v);
  return v;
}

BigRational HostStats::g_star(const SmallGraph& h) {
  BigRational v = 1;
  for (const SmallGraph& comp : h.components()) v *= g(comp);
  return v;
}

BigRational HostStats::evaluate(const StatVector& vec) {
  BigRational total = 0;
  for (const auto& [h, c] : vec.terms()) {
    switch (vec.basis()) {
      case Basis::X: total += c * x(h); break;
      case Basis::XStar: total += c * x_star(h); break;
      case Basis::G: total += c * g(h); break;
      case Basis::GStar: total += c * g_star(h); break;
    }
  }
  return total;
}

std::vector<HostGraph> identity_hosts(int n) {
  std::vector<HostGraph> hosts;
  if (n <= 5) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      HostGraph g(n);
      int k = 0;
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
          if ((mask >> k) & 1u) g.add_edge(i, j);
      hosts.push_back(std::move(g));
    }
  } else if (n <= kMaxSmallVertices) {
    for (const SmallGraph& s : catalog())
      if (s.vertex_count() == n) hosts.push_back(HostGraph::from_labeled(s.labeled()));
  } else {
    throw SizeLimitError("identity verification limited to hosts with at most 7 vertices");
  }
  return hosts;
}

IdentityReport verify_identity(const StatVector& lhs, const StatVector& rhs) {
  if (lhs.ctx().n != rhs.ctx().n || lhs.ctx().p != rhs.ctx().p)
    throw std::invalid_argument("identity sides use different contexts");
  IdentityReport report;
  for (const HostGraph& g : identity_hosts(static_cast<int>(lhs.ctx().n))) {
    DirectEvaluator ev(g, lhs.ctx());
    ++report.hosts_checked;
    if (ev.evaluate(lhs) != ev.evaluate(rhs)) {
      if (report.failures == 0) report.witness = graph6_emit(g);
      ++report.failures;
    }
  }
  return report;
}

BigRational exact_expectation_product(const SmallGraph& h1, const SmallGraph& h2, const ProblemContext& ctx) {
  const int n = static_cast<int>(ctx.n);
  if (n > 6) throw SizeLimitError("exact expectation limited to n <= 6");
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  BigRational total = 0;
  for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
    HostGraph g(n);
    int k = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i, ++k)
        if ((mask >> k) & 1u) g.add_edge(i, j);
    DirectEvaluator ev(g, ctx);
    BigRational prod = ev.g(h1) * ev.g(h2);
    if (prod != 0) total += host_weight(g.edge_count(), pairs, ctx.p) * prod;
  }
  return total;
}

}  // namespace sgf
