#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgf/counting.hpp"
#include "sgf/factor_algebra.hpp"
#include "sgf/host_graph.hpp"

namespace sgf {

/// g_H(G) = sum over copies H' of H in K_n of prod_{e in H'} (x_e - p), computed
/// directly from the embedding histogram by number of present edges. Works for
/// any H with at most 7 vertices; cost grows like n^v(H).
BigRational scaled_factor_direct(const SmallGraph& h, const HostGraph& g, const ProblemContext& ctx);

/// g_H(G) for hosts of any size (direct for n <= 10, counting otherwise).
/// Throws std::invalid_argument if g.n() != ctx.n.
BigRational scaled_factor_value(const SmallGraph& h, const HostGraph& g, const ProblemContext& ctx);

/// gamma_H(G) as a float, g / (p(1-p))^{e/2}.
double gamma_value(const SmallGraph& h, const BigRational& g_value, const ProblemContext& ctx);

/// Evaluates vectors in any basis on one host from direct definitions:
/// subgraph counts by embedding search and g by the embedding histogram.
class DirectEvaluator {
 public:
  DirectEvaluator(const HostGraph& g, const ProblemContext& ctx);
  BigInt x(const SmallGraph& h);
  BigRational g(const SmallGraph& h);
  BigRational evaluate(const StatVector& v);

 private:
  HostGraph host_;
  ProblemContext ctx_;
  std::unordered_map<std::uint32_t, BigInt> x_;
  std::unordered_map<std::uint32_t, BigRational> g_;
};

/// Fast evaluator for larger hosts: connected counts from motif formulas
/// (<= 4 vertices) or embedding search, disconnected counts from the partition
/// identity, and g from its expansion in subgraph counts.
class HostStats {
 public:
  HostStats(const HostGraph& g, FactorAlgebra& algebra);
  BigInt x(const SmallGraph& h);
  BigInt x_star(const SmallGraph& h);
  BigRational g(const SmallGraph& h);
  BigRational g_star(const SmallGraph& h);
  BigRational evaluate(const StatVector& v);

 private:
  BigInt connected(const SmallGraph& h);

  HostGraph host_;
  FactorAlgebra& algebra_;
  std::optional<MotifCounts> motifs_;
  std::unordered_map<std::uint32_t, BigInt> x_;
  std::unordered_map<std::uint32_t, BigRational> g_;
};

struct IdentityReport {
  long hosts_checked = 0;
  long failures = 0;
  std::string witness;  // graph6 of the first failing host
  bool passed() const { return failures == 0; }
};

/// Exact comparison of lhs and rhs on every ctx.n-vertex host: all labeled
/// hosts for n <= 5, one representative per isomorphism class for 6 <= n <= 7.
IdentityReport verify_identity(const StatVector& lhs, const StatVector& rhs);

/// Hosts used by verify_identity for a given n.
std::vector<HostGraph> identity_hosts(int n);

/// sum over all labeled hosts G on n vertices of P(G) * g_{H1}(G) * g_{H2}(G),
/// exact (n <= 6).
BigRational exact_expectation_product(const SmallGraph& h1, const SmallGraph& h2, const ProblemContext& ctx);

/// Probability weight p^e (1-p)^{M-e} of a labeled host with e edges.
BigRational host_weight(long edges, long pairs, const BigRational& p);

}  // namespace sgf
