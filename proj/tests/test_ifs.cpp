#include <doctest.h>

#include <random>

#include "sgf/counting.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/factor_map.hpp"
#include "sgf/ifs.hpp"

using namespace sgf;

namespace {

SmallGraph alias(const std::string& name) {
  SmallGraph g;
  REQUIRE(lookup_alias(name, g));
  return g;
}

BigRational q(long a, long b) {
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

// p^e v!/aut C(n, v): the count expectation, which is the X value at g = 0
// for graphs with at most 3 vertices.
BigRational mean_count(const SmallGraph& h, long n, const BigRational& p) {
  return pow(p, h.edge_count()) * BigRational(factorial(h.vertex_count()) * binom(BigInt(n), h.vertex_count())) /
         BigRational(h.aut_count());
}

}  // namespace

TEST_CASE("single-edge IFS examples") {
  GraphFamily fam = family("K2");
  IfsSystem half = ifs_construct(fam, ProblemContext(5, q(1, 2)));
  REQUIRE(half.entries.size() == 1);
  const IfsEntry& e = half.entries[0];
  CHECK(e.a.size() == 2);
  CHECK(e.a.at(alias("K2")) == 1);
  CHECK(e.a.at(SmallGraph()) == -5);
  CHECK(e.b == StatVector::single(Basis::GStar, half.ctx, alias("K2")));

  ProblemContext third(5, q(1, 3));
  IfsSystem sys = ifs_construct(fam, third);
  const IfsEntry& f = sys.entries[0];
  CHECK(f.a.at(SmallGraph()) == -3);
  CHECK(f.b.coeff(SmallGraph()) == q(1, 3));
  CHECK(f.b.coeff(alias("K2")) == 1);
  IfsReport rep = ifs_verify(sys, 200, 5);
  CHECK(rep.passed());
  CHECK(rep.eta <= 1.0);
  CHECK(rep.eta == doctest::Approx(std::sqrt(2.0 / 9.0)));
}

TEST_CASE("IFS over C2 and C3 at n = 20") {
  ProblemContext ctx(20, q(1, 2));
  IfsSystem sys = ifs_construct(family("C2,C3"), ctx);
  IfsReport rep = ifs_verify(sys, 300, 11);
  CHECK(rep.passed());
  CHECK(rep.samples == 300);
  for (const IfsEntry& e : sys.entries) {
    CHECK(e.a.at(e.h) == 1);
    CHECK(e.c.coeff(e.h) == 1);
    for (const auto& [hp, t] : e.b.terms())
      if (!(hp == e.h)) CHECK(t * t * pow(ctx.q(), hp.edge_count()) <= 1);
  }
}

TEST_CASE("IFS rejects families that are not downwards closed") {
  CHECK_THROWS_AS(ifs_construct(family("K3"), ProblemContext(10, q(1, 2))), std::invalid_argument);
}

TEST_CASE("IFS values are integers on random hosts, checked independently") {
  ProblemContext ctx(12, q(2, 5));
  IfsSystem sys = ifs_construct(family("C2,C3,C4"), ctx);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    HostGraph g = sample_gnp(12, ctx.p, rng);
    for (const IfsEntry& e : sys.entries) {
      BigRational via_g = 0;
      for (const auto& [hp, u] : e.c.terms()) via_g += u * scaled_factor_direct(hp, g, ctx);
      BigInt via_x = 0;
      for (const auto& [hp, k] : e.a) {
        BigInt prod = 1;
        for (const SmallGraph& c : hp.components()) prod *= count_subgraph_copies(c, g);
        via_x += k * prod;
      }
      REQUIRE(via_g == BigRational(via_x));
    }
  }
}

TEST_CASE("count map at the zero tuple") {
  GraphFamily fam = family("C2,C3");
  REQUIRE(fam.members.size() == 3);
  for (long n : {8L, 9L}) {
    FactorMap map(fam, ProblemContext(n, q(1, 2)));
    std::vector<BigRational> zero(3, 0);
    auto x = map.x_from_g(zero);
    for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == mean_count(fam.members[i], n, q(1, 2)));
    CHECK(is_permissible(map, zero) == (n == 8));
  }
  FactorMap map8(fam, ProblemContext(8, q(1, 2)));
  auto x8 = map8.x_from_g({0, 0, 0});
  CHECK(x8[0] == 14);
  CHECK(x8[1] == 42);
  CHECK(x8[2] == 7);
  auto xf = map8.x_from_y({0.0, 0.0, 0.0});
  CHECK(xf[2] == doctest::Approx(7.0));
  FactorMap map9(fam, ProblemContext(9, q(1, 2)));
  CHECK(map9.x_from_g({0, 0, 0})[2] == q(21, 2));
  CHECK_FALSE(snap_to_lattice(map9, {0.0, 0.0, 0.0}).permissible);
  CHECK(snap_to_lattice(map8, {0.0, 0.0, 0.0}).permissible);
}

TEST_CASE("count map agrees with host evaluations") {
  GraphFamily fam = family("C2,C3,C4");
  ProblemContext ctx(8, q(1, 3));
  FactorMap map(fam, ctx);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    HostGraph g = sample_gnp(8, ctx.p, rng);
    std::vector<BigRational> x, g_direct;
    for (const SmallGraph& h : fam.members) {
      x.emplace_back(count_subgraph_copies(h, g));
      g_direct.push_back(scaled_factor_direct(h, g, ctx));
    }
    CHECK(map.g_from_x(x) == g_direct);
    CHECK(map.x_from_g(g_direct) == x);
    CHECK(is_permissible(map, g_direct));
    std::vector<double> y;
    for (std::size_t i = 0; i < fam.size(); ++i) y.push_back(gamma_value(fam.members[i], g_direct[i], ctx));
    SnapResult snap = snap_to_lattice(map, y);
    CHECK(snap.permissible);
    CHECK(snap.x == x);
    auto yf = map.y_from_x(std::vector<double>(x.size()));
    CHECK(yf.size() == x.size());
  }
}

TEST_CASE("count map round trips around the mean") {
  GraphFamily fam = family("C2,C3");
  ProblemContext ctx(30, q(1, 2));
  FactorMap map(fam, ctx);
  auto mean = map.x_from_g({0, 0, 0});
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int t = 0; t < 100; ++t) {
    std::vector<BigRational> x;
    for (const auto& m : mean) {
      BigInt fl;
      mpz_fdiv_q(fl.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
      x.emplace_back(fl + d(rng));
    }
    CHECK(map.x_from_g(map.g_from_x(x)) == x);
    std::vector<double> xf;
    for (const auto& v : x) xf.push_back(v.get_d());
    auto back = map.x_from_y(map.y_from_x(xf));
    for (std::size_t i = 0; i < xf.size(); ++i) CHECK(back[i] == doctest::Approx(xf[i]).epsilon(1e-9));
  }
}

TEST_CASE("lattice density") {
  CHECK(FactorMap(family("K2"), ProblemContext(8, q(1, 2))).density_squared() == q(1, 4));
  for (auto p : {q(1, 2), q(1, 3)}) {
    ProblemContext ctx(30, p);
    FactorMap map(family("C2,C3"), ctx);
    CHECK(map.density_squared() == pow(ctx.q(), 6));
    CHECK(map.density_squared() == lattice_density_squared(family("C2,C3"), ctx));
    DensityEstimate est = empirical_density(map, 400);
    CHECK(est.relative_error < 0.02);
  }
}
