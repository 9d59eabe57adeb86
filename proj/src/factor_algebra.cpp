#include "sgf/factor_algebra.hpp"

#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sgf {

ProblemContext::ProblemContext(long n_, BigRational p_) : n(n_), p(std::move(p_)) {
  p.canonicalize();
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (p <= 0 || p >= 1) throw std::invalid_argument("p must lie strictly between 0 and 1");
}

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::X: return "X";
    case Basis::XStar: return "X*";
    case Basis::G: return "g";
    case Basis::GStar: return "g*";
  }
  return "?";
}

StatVector StatVector::single(Basis basis, const ProblemContext& ctx, const SmallGraph& h, BigRational coeff) {
  StatVector v(basis, ctx);
  v.add(h, coeff);
  return v;
}

BigRational StatVector::coeff(const SmallGraph& h) const {
  auto it = terms_.find(h);
  return it == terms_.end() ? BigRational(0) : it->second;
}

void StatVector::add(const SmallGraph& h, const BigRational& c) {
  if (c == 0) return;
  if (!h.is_niv()) throw std::invalid_argument("StatVector keys must be NIV graphs");
  auto [it, inserted] = terms_.emplace(h, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void StatVector::require_compatible(const StatVector& other) const {
  if (basis_ != other.basis_) throw std::invalid_argument("StatVector basis mismatch");
  if (ctx_.n != other.ctx_.n || ctx_.p != other.ctx_.p) throw std::invalid_argument("StatVector context mismatch");
}

void StatVector::add_scaled(const StatVector& other, const BigRational& c) {
  if (terms_.empty() && ctx_.n == 0) {
    basis_ = other.basis_;
    ctx_ = other.ctx_;
  }
  require_compatible(other);
  if (c == 0) return;
  for (const auto& [h, v] : other.terms_) add(h, v * c);
}

StatVector StatVector::scaled(const BigRational& c) const {
  StatVector out(basis_, ctx_);
  out.add_scaled(*this, c);
  return out;
}

StatVector operator+(const StatVector& u, const StatVector& w) {
  StatVector out = u;
  out.add_scaled(w, 1);
  return out;
}

StatVector operator-(const StatVector& u, const StatVector& w) {
  StatVector out = u;
  out.add_scaled(w, -1);
  return out;
}

std::string StatVector::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [h, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.get_str() << "*" << basis_name(basis_) << "[" << h.name() << "]";
  }
  if (first) out << "0";
  return out.str();
}

BigInt isolated_factor(long n, int v, int m) {
  if (n - v < m) return 0;
  return binom(BigInt(n - v), static_cast<unsigned long>(m));
}

namespace {

/// aut(core) * (n - v_core)_m, i.e. aut(U) * C(n - v_core, m) for U = core ⊔ mK1.
BigInt placement_weight(long n, const SmallGraph& core, int m) {
  const long free = n - core.vertex_count();
  if (free < m) return 0;
  return falling_factorial(BigInt(free), static_cast<unsigned long>(m)) * core.aut_count();
}

struct CoreSplit {
  SmallGraph core;
  int isolated = 0;
  bool too_large = false;
};

CoreSplit split_core(const LabeledGraph& g) {
  std::uint16_t keep = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 0) keep |= static_cast<std::uint16_t>(1u << v);
  CoreSplit out;
  const int kept = std::popcount(keep);
  out.isolated = g.vertex_count() - kept;
  if (kept > kMaxSmallVertices) {
    out.too_large = true;
    return out;
  }
  out.core = SmallGraph::from(g.induced(keep));
  return out;
}

}  // namespace

StatVector FactorAlgebra::unit(Basis basis) const { return StatVector::single(basis, ctx_, SmallGraph()); }

StatVector FactorAlgebra::expand_x_in_g(const SmallGraph& h) {
  auto cached = x_in_g_cache_.find(h.key().value);
  if (cached != x_in_g_cache_.end()) return cached->second;
  LabeledGraph lh = h.labeled();
  auto edges = lh.edges();
  const int e = static_cast<int>(edges.size());
  if (e > 16) throw SizeLimitError("expand_x_in_g limited to 16 edges");
  StatVector out(Basis::G, ctx_);
  std::vector<BigRational> p_pow(e + 1, BigRational(1));
  for (int k = 1; k <= e; ++k) p_pow[k] = p_pow[k - 1] * ctx_.p;
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    LabeledGraph t(lh.vertex_count());
    for (int i = 0; i < e; ++i)
      if ((mask >> i) & 1u) t.add_edge(edges[i].first, edges[i].second);
    CoreSplit cs = split_core(t);
    BigRational c = p_pow[e - std::popcount(mask)] * BigRational(placement_weight(ctx_.n, cs.core, cs.isolated)) /
                    h.aut_count();
    out.add(cs.core, c);
  }
  x_in_g_cache_.emplace(h.key().value, out);
  return out;
}

StatVector FactorAlgebra::expand_g_in_x(const SmallGraph& h) {
  auto cached = g_in_x_cache_.find(h.key().value);
  if (cached != g_in_x_cache_.end()) return cached->second;
  LabeledGraph lh = h.labeled();
  auto edges = lh.edges();
  const int e = static_cast<int>(edges.size());
  if (e > 16) throw SizeLimitError("expand_g_in_x limited to 16 edges");
  StatVector out(Basis::X, ctx_);
  std::vector<BigRational> p_pow(e + 1, BigRational(1));
  for (int k = 1; k <= e; ++k) p_pow[k] = p_pow[k - 1] * (-ctx_.p);
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    LabeledGraph t(lh.vertex_count());
    for (int i = 0; i < e; ++i)
      if ((mask >> i) & 1u) t.add_edge(edges[i].first, edges[i].second);
    CoreSplit cs = split_core(t);
    BigRational c = p_pow[e - std::popcount(mask)] * BigRational(placement_weight(ctx_.n, cs.core, cs.isolated)) /
                    h.aut_count();
    out.add(cs.core, c);
  }
  g_in_x_cache_.emplace(h.key().value, out);
  return out;
}

StatVector FactorAlgebra::product_of_keys(const SmallGraph& h1, const SmallGraph& h2) {
  auto cache_key = std::make_pair(h1.key().value, h2.key().value);
  auto cached = product_cache_.find(cache_key);
  if (cached != product_cache_.end()) return cached->second;

  const LabeledGraph l1 = h1.labeled(), l2 = h2.labeled();
  const int v1 = l1.vertex_count(), v2 = l2.vertex_count();
  const auto e1 = l1.edges();
  const BigRational one_minus_2p = 1 - 2 * ctx_.p;
  const BigRational q = ctx_.q();
  const BigRational denom = BigRational(h1.aut_count()) * h2.aut_count();
  StatVector out(Basis::G, ctx_);

  std::vector<int> image(v1, -1);
  std::uint32_t used = 0;
  auto emit = [&]() {
    // Union graph: H2 on 0..v2-1, unmatched H1 vertices appended.
    int next = v2;
    std::vector<int> where(v1);
    for (int i = 0; i < v1; ++i) where[i] = image[i] >= 0 ? image[i] : next++;
    const int vu = next;
    if (vu > kMaxLabeledVertices) throw SizeLimitError("overlay exceeds 16 vertices");
    if (vu > ctx_.n) return;  // no injective placement exists
    LabeledGraph grown(vu);
    for (auto [a, b] : l2.edges()) grown.add_edge(a, b);
    std::vector<std::pair<int, int>> shared;
    for (auto [a, b] : e1) {
      int x = where[a], y = where[b];
      if (x < v2 && y < v2 && l2.adjacent(x, y))
        shared.emplace_back(x, y);
      else
        grown.add_edge(x, y);
    }
    const int s = static_cast<int>(shared.size());
    for (std::uint32_t keep = 0; keep < (1u << s); ++keep) {
      LabeledGraph t = grown;
      for (int i = 0; i < s; ++i)
        if (!((keep >> i) & 1u)) t.remove_edge(shared[i].first, shared[i].second);
      const int kept = std::popcount(keep);
      BigRational c = pow(one_minus_2p, kept) * pow(q, s - kept);
      if (c == 0) continue;
      CoreSplit cs = split_core(t);
      if (cs.too_large) throw SizeLimitError("product term has a key with more than 7 vertices");
      BigInt w = placement_weight(ctx_.n, cs.core, cs.isolated);
      if (w == 0) continue;
      out.add(cs.core, c * BigRational(w) / denom);
    }
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == v1) {
      emit();
      return;
    }
    image[i] = -1;
    rec(i + 1);
    for (int j = 0; j < v2; ++j) {
      if ((used >> j) & 1u) continue;
      used |= 1u << j;
      image[i] = j;
      rec(i + 1);
      used &= ~(1u << j);
    }
    image[i] = -1;
  };
  rec(0);
  product_cache_.emplace(cache_key, out);
  return out;
}

StatVector FactorAlgebra::product_expand(const StatVector& u, const StatVector& w) {
  if (u.basis() != Basis::G || w.basis() != Basis::G) throw std::invalid_argument("product_expand needs g-basis inputs");
  StatVector out(Basis::G, ctx_);
  for (const auto& [h1, c1] : u.terms())
    for (const auto& [h2, c2] : w.terms()) {
      const SmallGraph& a = h1 < h2 ? h1 : h2;
      const SmallGraph& b = h1 < h2 ? h2 : h1;
      out.add_scaled(product_of_keys(a, b), c1 * c2);
    }
  return out;
}

StatVector FactorAlgebra::g_key_in_g_star(const SmallGraph& h) {
  auto cached = g_in_gstar_cache_.find(h.key().value);
  if (cached != g_in_gstar_cache_.end()) return cached->second;
  StatVector out(Basis::GStar, ctx_);
  if (h.is_empty() || h.is_connected()) {
    out.add(h, 1);
  } else {
    auto comps = h.components();
    StatVector prod = unit(Basis::G);
    for (const SmallGraph& c : comps) prod = product_expand(prod, StatVector::single(Basis::G, ctx_, c));
    const BigRational lead = prod.coeff(h);
    if (lead == 0) throw std::logic_error("missing leading term in component product");
    prod.add(h, -lead);
    out.add(h, 1);
    out.add_scaled(to_g_star(prod), -1);
    out = out.scaled(1 / lead);
  }
  g_in_gstar_cache_.emplace(h.key().value, out);
  return out;
}

StatVector FactorAlgebra::to_g_star(const StatVector& u) {
  if (u.basis() != Basis::G) throw std::invalid_argument("to_g_star needs a g-basis input");
  StatVector out(Basis::GStar, ctx_);
  for (const auto& [h, c] : u.terms()) out.add_scaled(g_key_in_g_star(h), c);
  return out;
}

StatVector FactorAlgebra::to_g(const StatVector& u) {
  if (u.basis() != Basis::GStar) throw std::invalid_argument("to_g needs a g*-basis input");
  StatVector out(Basis::G, ctx_);
  for (const auto& [h, c] : u.terms()) {
    StatVector prod = unit(Basis::G);
    for (const SmallGraph& comp : h.components()) prod = product_expand(prod, StatVector::single(Basis::G, ctx_, comp));
    out.add_scaled(prod, c);
  }
  return out;
}

StatVector FactorAlgebra::g_star_product(const StatVector& u, const StatVector& w) const {
  if (u.basis() != Basis::GStar || w.basis() != Basis::GStar) throw std::invalid_argument("g_star_product needs g* inputs");
  StatVector out(Basis::GStar, ctx_);
  for (const auto& [h1, c1] : u.terms())
    for (const auto& [h2, c2] : w.terms()) {
      if (h1.vertex_count() + h2.vertex_count() > kMaxSmallVertices)
        throw SizeLimitError("g* product exceeds 7 vertices");
      out.add(h1.disjoint_union(h2), c1 * c2);
    }
  return out;
}

StatVector FactorAlgebra::x_star_in_g_star(const SmallGraph& h) {
  auto cached = xstar_cache_.find(h.key().value);
  if (cached != xstar_cache_.end()) return cached->second;
  StatVector out = unit(Basis::GStar);
  for (const SmallGraph& c : h.components()) out = g_star_product(out, to_g_star(expand_x_in_g(c)));
  xstar_cache_.emplace(h.key().value, out);
  return out;
}

StatVector FactorAlgebra::x_to_g(const StatVector& u) {
  if (u.basis() != Basis::X) throw std::invalid_argument("x_to_g needs an X-basis input");
  StatVector out(Basis::G, ctx_);
  for (const auto& [h, c] : u.terms()) out.add_scaled(expand_x_in_g(h), c);
  return out;
}

StatVector FactorAlgebra::x_star_to_g_star(const StatVector& u) {
  if (u.basis() != Basis::XStar) throw std::invalid_argument("x_star_to_g_star needs an X*-basis input");
  StatVector out(Basis::GStar, ctx_);
  for (const auto& [h, c] : u.terms()) out.add_scaled(x_star_in_g_star(h), c);
  return out;
}

}  // namespace sgf
