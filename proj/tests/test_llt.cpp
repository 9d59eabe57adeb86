#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sgf/counting.hpp"
#include "sgf/enumerate.hpp"
#include "sgf/llt.hpp"

using namespace sgf;

namespace {

BigRational q(long a, long b) {
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("sigma table") {
  auto s5 = sigma_table(family("C2,C3"), 5);
  CHECK(s5[0].sigma2 == 10);
  CHECK(s5[1].sigma2 == 30);
  CHECK(sigma_table(family("C2,C3"), 9)[2].sigma2 == 84);
  for (long n = 4; n <= 9; ++n)
    for (const SigmaEntry& e : sigma_table(family("C2,C3,C4"), n))
      CHECK(e.sigma2 == count_subgraph_copies(e.h, HostGraph::complete(static_cast<int>(n))));
  CHECK_THROWS_AS(sigma_table(family("C2,C3"), 2), std::invalid_argument);
}

TEST_CASE("prediction formula") {
  ProblemContext ctx(8, q(1, 2));
  double expected = 1 / (std::sqrt(2 * std::numbers::pi) * 0.5 * std::sqrt(28.0));
  CHECK(llt_prediction(family("K2"), ctx, {0.0}) == doctest::Approx(expected));
  CHECK(llt_prediction(family("K2"), ctx, {0.0}) == doctest::Approx(0.1508).epsilon(1e-3));
  // single edge: N((x - pM) / sqrt(pqM)) / sqrt(pqM)
  ProblemContext c2(20, q(1, 3));
  FactorMap map(family("K2"), c2);
  const double m = 190, pq = 2.0 / 9.0;
  for (double x : {50.0, 63.0, 70.0}) {
    double y = map.y_from_x({x})[0];
    double z = (x - m / 3) / std::sqrt(pq * m);
    CHECK(llt_prediction(family("K2"), c2, {y}) == doctest::Approx(standard_normal_density(z) / std::sqrt(pq * m)));
  }
  CHECK(llt_prediction(family("C2,C3"), ctx, {0, 0, 0}) > llt_prediction(family("C2,C3"), ctx, {0.1, 0, 0}));
}

TEST_CASE("Gray-code counters match recounts") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> start(0, (std::uint64_t{1} << 28) - 20000);
  long checked = 0;
  for (int run = 0; run < 5; ++run) {
    std::uint64_t first = start(rng);
    long step = 0;
    gray_enumerate(8, first, first + 20000, [&](std::uint64_t mask, const std::uint32_t* rows, const SmallCounts& c) {
      if (step++ % 10 != 0) return;
      auto fresh = rows_from_mask(8, mask);
      REQUIRE(c == counts_from_rows(fresh.data(), 8));
      REQUIRE(std::equal(fresh.begin(), fresh.end(), rows));
      ++checked;
    });
  }
  CHECK(checked == 10000);
}

TEST_CASE("exact joint distribution examples") {
  auto d4 = exact_joint_distribution(family("C2,C3"), ProblemContext(4, q(1, 2)));
  CHECK(d4.probability.at({3, 3, 1}) == q(4, 64));
  CHECK(d4.total() == 1);
  auto d3 = exact_joint_distribution(family("C2,C3"), ProblemContext(3, q(1, 2)));
  CHECK(d3.probability.at({3, 3, 1}) == q(1, 8));
  auto d2 = exact_joint_distribution(family("K2"), ProblemContext(2, q(2, 7)));
  CHECK(d2.probability.at({1}) == q(2, 7));
}

TEST_CASE("exact distributions: binomial marginal, permissibility, slow path") {
  ProblemContext ctx(7, q(1, 3));
  auto dist = exact_joint_distribution(family("C2,C3"), ctx, 2);
  CHECK(dist.total() == 1);
  std::vector<BigRational> marginal(22, 0);
  for (const auto& [x, p] : dist.probability) marginal[x[0]] += p;
  for (long k = 0; k <= 21; ++k)
    CHECK(marginal[k] == BigRational(binom(BigInt(21), k)) * pow(ctx.p, k) * pow(1 - ctx.p, 21 - k));
  FactorMap map(family("C2,C3"), ctx);
  for (const auto& [x, p] : dist.probability) {
    std::vector<BigRational> xs(x.begin(), x.end());
    CHECK(is_permissible(map, map.g_from_x(xs)));
  }
  ProblemContext c5(5, q(2, 5));
  auto full = exact_joint_distribution(family("C2,C3,C4"), c5);
  auto small = exact_joint_distribution(family("C2,C3"), c5);
  CHECK(full.total() == 1);
  std::map<CountTuple, BigRational> projected;
  for (const auto& [x, p] : full.probability) projected[{x[0], x[1], x[2]}] += p;
  CHECK(projected == small.probability);
  CHECK_THROWS_AS(exact_joint_distribution(family("C2,C3,C4"), ProblemContext(8, q(1, 2))), SizeLimitError);
}

TEST_CASE("mode and error report") {
  FactorMap map8(family("C2,C3"), ProblemContext(8, q(1, 2)));
  CHECK(llt_mode(map8) == CountTuple{14, 42, 7});
  auto dist = exact_joint_distribution(family("C2,C3"), ProblemContext(6, q(1, 2)));
  LltReport rep = llt_error_report(dist);
  for (const LltPoint& pt : rep.entries) CHECK(pt.scaled_error >= 0);
  CHECK(rep.mode().predicted >= rep.entries.front().predicted);
}

TEST_CASE("Monte Carlo estimates") {
  ProblemContext ctx(7, q(1, 2));
  GraphFamily fam = family("C2,C3");
  auto dist = exact_joint_distribution(fam, ctx);
  FactorMap map(fam, ctx);
  CountTuple mode = llt_mode(map);
  McEstimate est = mc_joint_estimate(fam, ctx, 400000, 17, 1);
  double exact = dist.probability.count(mode) ? dist.probability.at(mode).get_d() : 0.0;
  CHECK(std::fabs(est.frequency(mode) - exact) <= 4 * est.stderr_of(mode));
  McEstimate again = mc_joint_estimate(fam, ctx, 200000, 5, 1);
  McEstimate threaded = mc_joint_estimate(fam, ctx, 200000, 5, 3);
  CHECK(again.counts == threaded.counts);

  ProblemContext c30(30, q(1, 2));
  McEstimate wide = mc_joint_estimate(fam, c30, 10000, 3, 1);
  double sum = 0;
  for (const auto& [x, c] : wide.counts) sum += wide.frequency(x);
  CHECK(std::fabs(sum - 1) < 1e-12);
  // the general counting path agrees with the fast one
  McEstimate slow = mc_joint_estimate(family("C2,C3,Cyc4"), ProblemContext(10, q(1, 3)), 3000, 8, 1);
  McEstimate quick = mc_joint_estimate(fam, ProblemContext(10, q(1, 3)), 3000, 8, 1);
  std::map<CountTuple, std::uint64_t> projected;
  for (const auto& [x, c] : slow.counts) projected[{x[0], x[1], x[2]}] += c;
  CHECK(projected == quick.counts);
}

TEST_CASE("characteristic functions") {
  ProblemContext ctx(12, q(1, 2));
  IfsSystem ifs = ifs_construct(family("C2,C3"), ctx);
  CharPoint zero = char_fn_compare(ifs, {0, 0, 0}, 2000, 1);
  CHECK(zero.phi_x == std::complex<double>(1, 0));
  CHECK(zero.phi_z == std::complex<double>(1, 0));
  const double n = 12;
  CharPoint small = char_fn_compare(ifs, {0.5 / n, 0.5 / std::pow(n, 1.5), 0.5 / std::pow(n, 1.5)}, 40000, 2);
  CHECK(std::abs(small.phi_x) <= 1 + 3 * small.stderr_x);
  CHECK(std::abs(small.phi_z) <= 1 + 3 * small.stderr_z);
  CHECK(small.difference <= 0.1 + 4 * small.combined_stderr);
}
