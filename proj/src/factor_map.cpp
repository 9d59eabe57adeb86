#include "sgf/factor_map.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sgf {

FactorMap::FactorMap(const GraphFamily& family, const ProblemContext& ctx) : family_(family), ctx_(ctx) {
  if (!family.downwards_closed) throw std::invalid_argument("the count/factor map is triangular only for downwards closed families");
  FactorAlgebra algebra(ctx);
  const std::size_t k = family.size();
  poly_.resize(k);
  diag_.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const SmallGraph& h = family.members[i];
    scale_.push_back(std::pow(ctx.q().get_d(), h.edge_count() / 2.0));
    StatVector gs = algebra.to_g_star(algebra.expand_x_in_g(h));
    for (const auto& [key, coeff] : gs.terms()) {
      Monomial m{coeff, {}};
      for (const SmallGraph& comp : key.components()) {
        int idx = family.index_of(comp);
        if (idx < 0) throw std::invalid_argument("component " + comp.name() + " of " + key.name() + " is outside the family");
        m.factors.push_back(idx);
      }
      std::sort(m.factors.begin(), m.factors.end());
      bool linear_self = m.factors.size() == 1 && m.factors[0] == static_cast<int>(i);
      if (linear_self) {
        diag_[i] = coeff;
        continue;
      }
      for (int f : m.factors)
        if (f >= static_cast<int>(i)) throw std::logic_error("count map is not triangular at " + h.name());
      poly_[i].push_back(std::move(m));
    }
    if (diag_[i] == 0) throw std::logic_error("count map has a zero diagonal at " + h.name());
  }
}

std::vector<BigRational> FactorMap::x_from_g(const std::vector<BigRational>& g) const {
  if (g.size() != size()) throw std::invalid_argument("tuple length does not match the family");
  std::vector<BigRational> x(size());
  for (std::size_t i = 0; i < size(); ++i) {
    BigRational v = diag_[i] * g[i];
    for (const Monomial& m : poly_[i]) {
      BigRational t = m.coeff;
      for (int f : m.factors) t *= g[f];
      v += t;
    }
    x[i] = v;
  }
  return x;
}

std::vector<BigRational> FactorMap::g_from_x(const std::vector<BigRational>& x) const {
  if (x.size() != size()) throw std::invalid_argument("tuple length does not match the family");
  std::vector<BigRational> g(size());
  for (std::size_t i = 0; i < size(); ++i) {
    BigRational rest = 0;
    for (const Monomial& m : poly_[i]) {
      BigRational t = m.coeff;
      for (int f : m.factors) t *= g[f];
      rest += t;
    }
    g[i] = (x[i] - rest) / diag_[i];
  }
  return g;
}

std::vector<double> FactorMap::x_from_y(const std::vector<double>& y) const {
  std::vector<double> g = g_from_y(y);
  std::vector<double> x(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double v = diag_[i].get_d() * g[i];
    for (const Monomial& m : poly_[i]) {
      double t = m.coeff.get_d();
      for (int f : m.factors) t *= g[f];
      v += t;
    }
    x[i] = v;
  }
  return x;
}

std::vector<double> FactorMap::y_from_x(const std::vector<double>& x) const {
  if (x.size() != size()) throw std::invalid_argument("tuple length does not match the family");
  std::vector<double> g(size()), y(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double rest = 0;
    for (const Monomial& m : poly_[i]) {
      double t = m.coeff.get_d();
      for (int f : m.factors) t *= g[f];
      rest += t;
    }
    g[i] = (x[i] - rest) / diag_[i].get_d();
    y[i] = g[i] / scale_[i];
  }
  return y;
}

std::vector<double> FactorMap::y_from_g(const std::vector<BigRational>& g) const {
  std::vector<double> y(size());
  for (std::size_t i = 0; i < size(); ++i) y[i] = g[i].get_d() / scale_[i];
  return y;
}

std::vector<double> FactorMap::g_from_y(const std::vector<double>& y) const {
  if (y.size() != size()) throw std::invalid_argument("tuple length does not match the family");
  std::vector<double> g(size());
  for (std::size_t i = 0; i < size(); ++i) g[i] = y[i] * scale_[i];
  return g;
}

BigRational FactorMap::density_squared() const {
  BigRational d = 1;
  for (std::size_t i = 0; i < size(); ++i) d *= diag_[i] * diag_[i] * pow(ctx_.q(), family_.members[i].edge_count());
  return d;
}

bool is_permissible(const FactorMap& map, const std::vector<BigRational>& g) {
  for (const BigRational& x : map.x_from_g(g))
    if (!is_integer(x)) return false;
  return true;
}

SnapResult snap_to_lattice(const FactorMap& map, const std::vector<double>& y, double tolerance) {
  SnapResult out;
  std::vector<double> xf = map.x_from_y(y);
  for (double v : xf) out.x.emplace_back(static_cast<long>(std::llround(v)));
  out.g = map.g_from_x(out.x);
  std::vector<double> ys = map.y_from_g(out.g);
  for (std::size_t i = 0; i < y.size(); ++i) out.max_deviation = std::max(out.max_deviation, std::fabs(ys[i] - y[i]));
  out.permissible = out.max_deviation <= tolerance;
  out.exact = out.max_deviation <= 1e-12 * (1 + std::fabs(*std::max_element(ys.begin(), ys.end(), [](double a, double b) {
                                                  return std::fabs(a) < std::fabs(b);
                                                })));
  return out;
}

BigRational lattice_density_squared(const GraphFamily& family, const ProblemContext& ctx) {
  long edges = 0;
  for (const SmallGraph& h : family.members) edges += h.edge_count();
  return pow(ctx.q(), edges);
}

DensityEstimate empirical_density(const FactorMap& map, double width) {
  const std::size_t k = map.size();
  std::vector<double> half(k);  // half-width of the box in gamma units
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    scale[i] = std::pow(map.ctx().q().get_d(), map.family().members[i].edge_count() / 2.0);
    half[i] = width / 2 / scale[i];
  }
  std::vector<double> g(k, 0);
  auto rest = [&](std::size_t i) {
    double r = 0;
    for (const auto& m : map.polynomial(i)) {
      double t = m.coeff.get_d();
      for (int f : m.factors) t *= g[f];
      r += t;
    }
    return r;
  };
  double count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    const double d = map.diagonal(i).get_d();
    const double r = rest(i);
    // x = d g + r with |g| <= half * scale
    const double lo = r - std::fabs(d) * half[i] * scale[i];
    const double hi = r + std::fabs(d) * half[i] * scale[i];
    const double first = std::ceil(lo), last = std::floor(hi);
    if (last < first) return;
    if (i + 1 == k) {
      count += last - first + 1;
      return;
    }
    for (double x = first; x <= last; x += 1) {
      g[i] = (x - r) / d;
      rec(i + 1);
    }
  };
  if (k > 0) rec(0);
  DensityEstimate est;
  est.count = count;
  est.volume = 1;
  for (std::size_t i = 0; i < k; ++i) est.volume *= 2 * half[i];
  est.density = count / est.volume;
  est.predicted = std::sqrt(map.density_squared().get_d());
  est.relative_error = std::fabs(est.density - est.predicted) / est.predicted;
  return est;
}

}  // namespace sgf
