#pragma once

#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/factor_algebra.hpp"

namespace sgf {

/// The triangular polynomial map between scaled factors (g_H) and subgraph
/// counts (X_H) over a downwards closed family at fixed (n, p). Tuples are
/// indexed like family.members.
class FactorMap {
 public:
  struct Monomial {
    BigRational coeff;
    std::vector<int> factors;  // family indices with multiplicity, sorted
  };

  FactorMap(const GraphFamily& family, const ProblemContext& ctx);

  const GraphFamily& family() const { return family_; }
  const ProblemContext& ctx() const { return ctx_; }
  std::size_t size() const { return family_.size(); }
  const std::vector<Monomial>& polynomial(std::size_t i) const { return poly_[i]; }

  /// Coefficient of the linear monomial g_{H_i} in X_{H_i}.
  const BigRational& diagonal(std::size_t i) const { return diag_[i]; }

  std::vector<BigRational> x_from_g(const std::vector<BigRational>& g) const;
  std::vector<BigRational> g_from_x(const std::vector<BigRational>& x) const;
  std::vector<double> x_from_y(const std::vector<double>& y) const;
  std::vector<double> y_from_x(const std::vector<double>& x) const;

  std::vector<double> y_from_g(const std::vector<BigRational>& g) const;
  std::vector<double> g_from_y(const std::vector<double>& y) const;

  /// prod_H diagonal(H)^2 (p(1-p))^{e(H)}, the squared density of the image
  /// of the integer lattice in gamma coordinates.
  BigRational density_squared() const;

 private:
  GraphFamily family_;
  ProblemContext ctx_;
  std::vector<std::vector<Monomial>> poly_;
  std::vector<BigRational> diag_;
  std::vector<double> scale_;  // (p(1-p))^{e/2}
};

/// Exact permissibility: every x_H is an integer.
bool is_permissible(const FactorMap& map, const std::vector<BigRational>& g);

struct SnapResult {
  bool permissible = false;
  bool exact = false;            // input already sat on the lattice to double precision
  double max_deviation = 0;      // max |y - y_snapped|
  std::vector<BigRational> x;    // rounded counts
  std::vector<BigRational> g;    // exact g of the snapped point
};

/// Float front door: rounds x_from_y(y) to integers and accepts when the
/// exact lattice point lies within `tolerance` of y in every coordinate.
SnapResult snap_to_lattice(const FactorMap& map, const std::vector<double>& y, double tolerance = 1e-6);

/// (p(1-p))^{sum e(H)}; equal to density_squared() when every diagonal is 1.
BigRational lattice_density_squared(const GraphFamily& family, const ProblemContext& ctx);

struct DensityEstimate {
  double count = 0;         // lattice points found in the box
  double volume = 0;        // box volume in gamma coordinates
  double density = 0;       // count / volume
  double predicted = 0;     // sqrt(density_squared)
  double relative_error = 0;
};

/// Counts integer x tuples whose gamma image lies in the box
/// prod [-w_H / s_H, w_H / s_H] with s_H = (p(1-p))^{e/2}, so every coordinate
/// spans `width` integers of X_H. The last coordinate is counted in closed form.
DensityEstimate empirical_density(const FactorMap& map, double width);

}  // namespace sgf
