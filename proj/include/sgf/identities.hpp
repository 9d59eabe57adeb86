#pragma once

#include <string>
#include <vector>

#include "sgf/numtheory.hpp"

namespace sgf {

/// One identity kind at one (n, p), checked on every host of identity_hosts(n).
struct IdentityRow {
  std::string identity;  // xgamma, partition, addiv, 2k2, product
  int n = 0;
  BigRational p;
  long instances = 0;  // pattern graphs or pairs
  long hosts = 0;
  long checks = 0;     // instances x hosts
  long failures = 0;
  std::string witness;  // "<instance> @ <host graph6>" for the first failure
};

struct IdentitySuiteReport {
  std::vector<IdentityRow> rows;
  long checks() const;
  long failures() const;
  bool passed() const { return failures() == 0; }
};

/// Exact pointwise check of
///   xgamma:    X_H = expand_x_in_g(H) for NIV H with v(H) <= min(n, 5)
///   partition: prod_i aut(H_i) X_{H_i} = sum_P aut(H/P) X_{H/P} for disconnected NIV H
///   addiv:     g_{H + mK1} = C(n - v, m) g_H
///   2k2:       g_K2^2 = 2 g_2K2 + 2 g_P2 + (1 - 2p) g_K2 + p(1-p) C(n,2)
///   product:   g_H1 g_H2 = product_expand(g_H1, g_H2) for NIV keys on <= 4 vertices, v1 + v2 <= 7
/// with both sides evaluated from definitions, for host sizes 2..max_vertices
/// (labeled hosts up to 5 vertices, isomorphism classes above). Rows are
/// ordered by (p, n, identity) independent of the worker count.
IdentitySuiteReport run_identity_suite(int max_vertices, const std::vector<BigRational>& ps, int workers = 1);

}  // namespace sgf
