#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/factor_algebra.hpp"

namespace sgf {

/// F_H = sum a_{H'} X*_{H'} = sum t_{H'} g*_{H'} = sum u_{H'} g_{H'} over NIV H' ⪯ H.
/// In the gamma normalization b_{H'} = t_{H'} (p(1-p))^{e(H')/2} and
/// c_{H'} = u_{H'} (p(1-p))^{e(H')/2}.
struct IfsEntry {
  SmallGraph h;
  std::map<SmallGraph, BigInt> a;  // X* basis, integer
  StatVector b;                    // g* basis
  StatVector c;                    // g basis
  int iterations = 0;
};

struct IfsSystem {
  ProblemContext ctx;
  GraphFamily family;
  std::vector<IfsEntry> entries;  // family order
  double eta = 0;                 // max of eta_b, eta_c
  double eta_b = 0;
  double eta_c = 0;
};

/// Runs the subtraction loop: starting from X*_H in g*, repeatedly picks the
/// ⪯-maximal H' (ties: catalog order) with |b_{H'}| > 1 and subtracts the
/// nearest integer multiple (ties toward zero) of X*_{H'}. Throws
/// std::invalid_argument for a family that is not downwards closed and
/// std::runtime_error if the iteration cap is hit.
IfsSystem ifs_construct(const GraphFamily& family, const ProblemContext& ctx, FactorAlgebra& algebra);
IfsSystem ifs_construct(const GraphFamily& family, const ProblemContext& ctx);

/// |coefficient| (p(1-p))^{e/2} / n^{(v(H) - v(H'))/2}, the normalized size of
/// a g- or g*-coefficient t of H' in F_H.
double normalized_coefficient(const BigRational& t, const SmallGraph& h, const SmallGraph& hp, const ProblemContext& ctx);

struct IfsReport {
  double eta = 0;
  double eta_b = 0;
  double eta_c = 0;
  long samples = 0;
  long integrality_violations = 0;
  long condition_violations = 0;
  std::vector<std::string> messages;
  bool passed() const { return integrality_violations == 0 && condition_violations == 0; }
};

/// Re-checks conditions (a)-(c) exactly, re-derives b from a and c from b,
/// and evaluates both the X* form and the g form of every F_H on `samples`
/// G(n,p) hosts (shard-seeded from `seed`), requiring equal integer values.
IfsReport ifs_verify(const IfsSystem& ifs, long samples = 1000, std::uint64_t seed = 1, int workers = 1);

}  // namespace sgf
