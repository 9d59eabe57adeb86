#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>

#include "sgf/numtheory.hpp"
#include "sgf/small_graph.hpp"

namespace sgf {

/// Fixed (n, p) with p = a/b in lowest terms, 0 < a < b.
struct ProblemContext {
  long n = 0;
  BigRational p;

  ProblemContext() = default;
  ProblemContext(long n_, BigRational p_);

  BigInt a() const { return p.get_num(); }
  BigInt b() const { return p.get_den(); }
  /// p(1-p)
  BigRational q() const { return p * (1 - p); }
  std::string p_string() const { return to_fraction_string(p); }
};

/// X: subgraph counts, XStar: products of component counts,
/// G: scaled factors g_H = (p(1-p))^{e/2} gamma_H, GStar: products of g over components.
enum class Basis { X, XStar, G, GStar };
const char* basis_name(Basis b);

/// Exact rational combination of basis elements indexed by NIV graphs.
class StatVector {
 public:
  using Terms = std::map<SmallGraph, BigRational>;

  StatVector() = default;
  StatVector(Basis basis, ProblemContext ctx) : basis_(basis), ctx_(std::move(ctx)) {}

  static StatVector single(Basis basis, const ProblemContext& ctx, const SmallGraph& h, BigRational coeff = 1);

  Basis basis() const { return basis_; }
  const ProblemContext& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  BigRational coeff(const SmallGraph& h) const;
  /// Adds c to the coefficient of h, dropping the key if it becomes zero.
  void add(const SmallGraph& h, const BigRational& c);
  void add_scaled(const StatVector& other, const BigRational& c);
  StatVector scaled(const BigRational& c) const;

  friend StatVector operator+(const StatVector& u, const StatVector& w);
  friend StatVector operator-(const StatVector& u, const StatVector& w);
  friend bool operator==(const StatVector& u, const StatVector& w) {
    return u.basis_ == w.basis_ && u.terms_ == w.terms_;
  }

  std::string to_string() const;

 private:
  void require_compatible(const StatVector& other) const;

  Basis basis_ = Basis::G;
  ProblemContext ctx_;
  Terms terms_;
};

/// Change-of-basis and multiplication at fixed (n, p). Results are cached per
/// instance; an instance must not be shared between threads.
class FactorAlgebra {
 public:
  explicit FactorAlgebra(ProblemContext ctx) : ctx_(std::move(ctx)) {}

  const ProblemContext& ctx() const { return ctx_; }

  /// 1 = g_∅ = g*_∅.
  StatVector unit(Basis basis = Basis::G) const;

  /// X_H as a combination of g_{H'} over NIV H' ⪯ H, from spanning edge subsets
  /// and the isolated-vertex rule g_{H ⊔ mK1} = C(n - v(H), m) g_H.
  StatVector expand_x_in_g(const SmallGraph& h);

  /// g_H as a combination of X_{H'} (inverse expansion, (x - p) per edge).
  StatVector expand_g_in_x(const SmallGraph& h);

  /// Product in the g basis by overlay enumeration; shared edges reduce via
  /// (x-p)^2 = (1-2p)(x-p) + p(1-p). Throws SizeLimitError if a resulting
  /// key has more than 7 vertices.
  StatVector product_expand(const StatVector& u, const StatVector& w);

  /// Rewrites a g-basis vector in g* (monomials in connected g's) and back.
  StatVector to_g_star(const StatVector& u);
  StatVector to_g(const StatVector& u);

  /// Product in g*: g*_A g*_B = g*_{A ⊔ B}.
  StatVector g_star_product(const StatVector& u, const StatVector& w) const;

  /// X*_H = prod over components of X_C, expressed in g*.
  StatVector x_star_in_g_star(const SmallGraph& h);

  /// X and X* conversions in the other direction.
  StatVector x_to_g(const StatVector& u);  // u in X
  StatVector x_star_to_g_star(const StatVector& u);  // u in X*

 private:
  StatVector g_key_in_g_star(const SmallGraph& h);
  StatVector product_of_keys(const SmallGraph& h1, const SmallGraph& h2);

  ProblemContext ctx_;
  std::unordered_map<std::uint32_t, StatVector> x_in_g_cache_, g_in_x_cache_, g_in_gstar_cache_,
      xstar_cache_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, StatVector> product_cache_;
};

/// C(n - v, m) as used by the isolated-vertex rule; zero when n - v < m.
BigInt isolated_factor(long n, int v, int m);

}  // namespace sgf
