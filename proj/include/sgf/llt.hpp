#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgf/catalog.hpp"
#include "sgf/factor_algebra.hpp"
#include "sgf/factor_map.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/ifs.hpp"

namespace sgf {

struct SigmaEntry {
  SmallGraph h;
  BigInt sigma2;  // (n)_v / aut(H) = X_H(K_n)
  double sigma = 0;
};

/// Throws std::invalid_argument when n < v(H) for some member.
std::vector<SigmaEntry> sigma_table(const GraphFamily& family, long n);

double standard_normal_density(double z);

/// prod_H (p(1-p))^{e(H)/2} sigma_H: converts point probabilities to the
/// scale of the normal density product.
double llt_scale(const GraphFamily& family, const ProblemContext& ctx);

/// prod_H N(y_H / sigma_H) / ((p(1-p))^{e(H)/2} sigma_H).
double llt_prediction(const GraphFamily& family, const ProblemContext& ctx, const std::vector<double>& y);

using CountTuple = std::vector<long>;

/// Exact law of (X_H)_{H in family} over all labeled n-vertex hosts.
struct JointDistribution {
  GraphFamily family;
  ProblemContext ctx;
  std::map<CountTuple, std::vector<std::uint64_t>> graphs_by_edges;  // labeled hosts per edge count
  std::map<CountTuple, BigRational> probability;
  BigRational total() const;
};

/// Families must consist of connected graphs on 2..4 vertices. Subsets of
/// {K2, P2, K3} use the Gray-code counters and allow n <= 8; otherwise every
/// host is recounted and n <= 7. Throws SizeLimitError beyond that.
JointDistribution exact_joint_distribution(const GraphFamily& family, const ProblemContext& ctx, int workers = 1);

/// Counts of the family members on one host.
CountTuple family_counts(const GraphFamily& family, const HostGraph& g);

struct McEstimate {
  GraphFamily family;
  ProblemContext ctx;
  long samples = 0;
  std::map<CountTuple, std::uint64_t> counts;
  double frequency(const CountTuple& x) const;
  double stderr_of(const CountTuple& x) const;
};

/// Monte Carlo histogram of the family counts from `samples` G(n,p) hosts.
/// Samples are split into shards of 2^16 seeded by shard_seed(seed, shard),
/// so results do not depend on the worker count. With radius >= 0 only tuples
/// within that sup-distance of `center` are recorded.
McEstimate mc_joint_estimate(const GraphFamily& family, const ProblemContext& ctx, long samples, std::uint64_t seed,
                             int workers = 1, const CountTuple& center = {}, long radius = -1);

constexpr std::uint64_t kMcShardSize = std::uint64_t{1} << 16;

/// The integer tuple maximizing the prediction (ties: lexicographically least),
/// searched on a grid around the conditional means.
CountTuple llt_mode(const FactorMap& map);

struct LltPoint {
  CountTuple x;
  std::vector<double> y;
  std::optional<BigRational> exact;
  std::optional<double> estimate;
  double stderr_value = 0;
  double predicted = 0;
  double scaled_error = 0;   // |P prod(q^{e/2} sigma) - prod N(y / sigma)|
  double scaled_stderr = 0;  // stderr on the same scale
};

struct LltReport {
  GraphFamily family;
  ProblemContext ctx;
  std::vector<SigmaEntry> sigma;
  std::vector<LltPoint> entries;
  std::size_t mode_index = 0;
  double max_scaled_error = 0;
  const LltPoint& mode() const { return entries.at(mode_index); }
};

/// Every tuple of the exact law, plus the mode even if it has probability 0.
LltReport llt_error_report(const JointDistribution& dist);

/// Tuples of the estimate within `radius` of the mode (all when radius < 0),
/// plus the mode itself.
LltReport llt_error_report(const McEstimate& est, long radius = -1);

struct CharPoint {
  std::vector<double> t;
  std::complex<double> phi_x, phi_z;
  double stderr_x = 0, stderr_z = 0;
  double difference = 0;       // |phi_x - phi_z|
  double combined_stderr = 0;  // sqrt(stderr_x^2 + stderr_z^2)
};

/// Monte Carlo estimates of E exp(i sum_H t_H F_H) under G(n,p) and under the
/// Gaussian model g_{H'} = (p(1-p))^{e/2} sigma_{H'} Z_{H'} applied to the g*
/// form of F. Members must be connected with 2..4 vertices.
CharPoint char_fn_compare(const IfsSystem& ifs, const std::vector<double>& t, long samples, std::uint64_t seed,
                          int workers = 1);

}  // namespace sgf
