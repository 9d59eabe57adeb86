#include <doctest.h>

#include <random>

#include "sgf/catalog.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/identities.hpp"
#include "sgf/factor_algebra.hpp"

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

HostGraph host_from_mask(int n, std::uint32_t mask) {
  HostGraph g(n);
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if ((mask >> k) & 1u) g.add_edge(i, j);
  return g;
}

// Exact Gaussian elimination; returns the solution of A x = rhs (A square, invertible).
std::vector<BigRational> solve(std::vector<std::vector<BigRational>> a, std::vector<BigRational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    REQUIRE(pivot < n);
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      BigRational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<BigRational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
  return x;
}

}  // namespace

TEST_CASE("scaled factor values") {
  ProblemContext c3(3, q(1, 2));
  CHECK(scaled_factor_value(alias("K2"), HostGraph::complete(3), c3) == q(3, 2));
  CHECK(scaled_factor_value(alias("K3"), HostGraph::complete(3), c3) == q(1, 8));
  for (long n : {3L, 7L, 20L}) {
    ProblemContext ctx(n, q(2, 5));
    CHECK(scaled_factor_value(alias("K2"), HostGraph(static_cast<int>(n)), ctx) == -ctx.p * BigRational(n * (n - 1) / 2));
  }
  CHECK_THROWS_AS(scaled_factor_value(alias("K2"), HostGraph(4), c3), std::invalid_argument);
}

TEST_CASE("fast and direct g evaluation agree on mid-size hosts") {
  std::mt19937_64 rng(17);
  ProblemContext ctx(11, q(1, 3));
  FactorAlgebra alg(ctx);
  for (int t = 0; t < 3; ++t) {
    HostGraph g = sample_gnp(11, ctx.p, rng);
    HostStats stats(g, alg);
    for (const SmallGraph& h : catalog()) {
      if (h.vertex_count() > 5 || !h.is_niv() || h.code() % 3 != static_cast<std::uint32_t>(t)) continue;
      CHECK(stats.g(h) == scaled_factor_direct(h, g, ctx));
    }
  }
}

TEST_CASE("expand_x_in_g examples") {
  ProblemContext ctx(3, q(1, 2));
  FactorAlgebra alg(ctx);
  StatVector xk2 = alg.expand_x_in_g(alias("K2"));
  CHECK(xk2.terms().size() == 2);
  CHECK(xk2.coeff(SmallGraph()) == ctx.p * 3);
  CHECK(xk2.coeff(alias("K2")) == 1);

  StatVector xp2 = alg.expand_x_in_g(alias("P2"));
  CHECK(xp2.coeff(SmallGraph()) == 3 * ctx.p * ctx.p * 1);
  CHECK(xp2.coeff(alias("K2")) == 2 * ctx.p * (3 - 2));
  CHECK(xp2.coeff(alias("P2")) == 1);
  HostStats stats(HostGraph::complete(3), alg);
  CHECK(xp2.coeff(SmallGraph()) == q(3, 4));
  CHECK(xp2.coeff(alias("K2")) * stats.g(alias("K2")) == q(3, 2));
  CHECK(stats.g(alias("P2")) == q(3, 4));
  CHECK(stats.evaluate(xp2) == 3);

  FactorAlgebra alg6(ProblemContext(6, q(1, 3)));
  for (const SmallGraph& h : connected_graphs(4)) CHECK(alg6.expand_x_in_g(h).coeff(h) == 1);
}

TEST_CASE("expand_x_in_g matches an exact linear solve from host evaluations") {
  // At n = 5 the 34 NIV graphs with at most 5 vertices index independent g's,
  // and the 34 isomorphism classes of 5-vertex hosts separate them.
  ProblemContext ctx(5, q(2, 5));
  FactorAlgebra alg(ctx);
  std::vector<SmallGraph> basis;
  for (const SmallGraph& s : catalog())
    if (s.vertex_count() <= 5 && s.is_niv()) basis.push_back(s);
  REQUIRE(basis.size() == 34);
  std::vector<HostGraph> hosts;
  for (const SmallGraph& s : catalog())
    if (s.vertex_count() == 5) hosts.push_back(HostGraph::from_labeled(s.labeled()));
  REQUIRE(hosts.size() == 34);
  std::vector<std::vector<BigRational>> a(34, std::vector<BigRational>(34));
  for (std::size_t r = 0; r < 34; ++r) {
    DirectEvaluator ev(hosts[r], ctx);
    for (std::size_t c = 0; c < 34; ++c) a[r][c] = ev.g(basis[c]);
  }
  for (int k = 2; k <= 5; ++k)
    for (const SmallGraph& h : connected_graphs(k)) {
      std::vector<BigRational> rhs(34);
      for (std::size_t r = 0; r < 34; ++r) rhs[r] = BigRational(count_subgraph_copies(h, hosts[r]));
      auto sol = solve(a, rhs);
      StatVector expected(Basis::G, ctx);
      for (std::size_t c = 0; c < 34; ++c) expected.add(basis[c], sol[c]);
      CHECK(alg.expand_x_in_g(h) == expected);
    }
}

TEST_CASE("product of two edge factors") {
  for (auto p : {q(1, 2), q(1, 3), q(2, 5)}) {
    ProblemContext ctx(6, p);
    FactorAlgebra alg(ctx);
    StatVector gk2 = StatVector::single(Basis::G, ctx, alias("K2"));
    StatVector prod = alg.product_expand(gk2, gk2);
    StatVector expected(Basis::G, ctx);
    expected.add(alias("2K2"), 2);
    expected.add(alias("P2"), 2);
    expected.add(alias("K2"), 1 - 2 * p);
    expected.add(SmallGraph(), p * (1 - p) * 15);
    CHECK(prod == expected);
    CHECK(alg.product_expand(alg.unit(), prod) == prod);
  }
}

TEST_CASE("g_K2 * g_P2 matches the pointwise product on all 5-vertex hosts") {
  ProblemContext ctx(5, q(1, 3));
  FactorAlgebra alg(ctx);
  StatVector prod = alg.product_expand(StatVector::single(Basis::G, ctx, alias("K2")),
                                       StatVector::single(Basis::G, ctx, alias("P2")));
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    HostGraph g = host_from_mask(5, mask);
    DirectEvaluator ev(g, ctx);
    REQUIRE(ev.evaluate(prod) == ev.g(alias("K2")) * ev.g(alias("P2")));
  }
}

TEST_CASE("product_expand is commutative and associative") {
  ProblemContext ctx(7, q(2, 5));
  FactorAlgebra alg(ctx);
  StatVector u(Basis::G, ctx), w(Basis::G, ctx), z(Basis::G, ctx);
  u.add(alias("K2"), q(3, 7));
  u.add(SmallGraph(), 2);
  w.add(alias("P2"), -1);
  w.add(alias("K3"), q(1, 2));
  z.add(alias("K2"), 5);
  z.add(alias("P2"), q(-2, 3));
  CHECK(alg.product_expand(u, w) == alg.product_expand(w, u));
  CHECK(alg.product_expand(alg.product_expand(u, w), z) == alg.product_expand(u, alg.product_expand(w, z)));
}

TEST_CASE("isolated vertex rule") {
  std::mt19937_64 rng(23);
  ProblemContext ctx(7, q(1, 3));
  for (int t = 0; t < 5; ++t) {
    HostGraph g = sample_gnp(7, ctx.p, rng);
    for (const char* name : {"K2", "P2", "K3", "2K2"}) {
      SmallGraph h = alias(name);
      for (int m = 1; m <= 2; ++m) {
        SmallGraph padded = h.disjoint_union(empty_graph(m));
        CHECK(scaled_factor_direct(padded, g, ctx) ==
              BigRational(isolated_factor(7, h.vertex_count(), m)) * scaled_factor_direct(h, g, ctx));
      }
    }
  }
}

TEST_CASE("g and g* conversions round trip") {
  ProblemContext ctx(9, q(1, 3));
  FactorAlgebra alg(ctx);
  for (const SmallGraph& s : catalog()) {
    if (!s.is_niv() || s.vertex_count() > 6) continue;
    StatVector gs = alg.to_g_star(StatVector::single(Basis::G, ctx, s));
    BigRational lead = 1;
    for (const SmallGraph& c : s.components()) lead *= c.aut_count();
    CHECK(gs.coeff(s) == lead / s.aut_count());
    CHECK(alg.to_g(gs) == StatVector::single(Basis::G, ctx, s));
  }
}

TEST_CASE("identity checks") {
  ProblemContext ctx(5, q(1, 2));
  FactorAlgebra alg(ctx);
  // aut(K2)^2 X*_{2K2} = sum over separating partitions of aut(H/P) X_{H/P}
  StatVector lhs = StatVector::single(Basis::XStar, ctx, alias("2K2"), 4);
  StatVector rhs(Basis::X, ctx);
  rhs.add(alias("2K2"), 8);
  rhs.add(alias("P2"), 4 * 2);  // four ways to merge one pair, aut P2 = 2
  rhs.add(alias("K2"), 2 * 2);  // two ways to merge both pairs, aut K2 = 2
  IdentityReport rep = verify_identity(lhs, rhs);
  CHECK(rep.hosts_checked == 1024);
  CHECK(rep.passed());
  CHECK(verify_identity(rhs, rhs).passed());
  StatVector wrong = rhs;
  wrong.add(alias("K2"), 1);
  IdentityReport bad = verify_identity(lhs, wrong);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.witness.empty());

  ProblemContext ctx6(6, q(2, 5));
  FactorAlgebra alg6(ctx6);
  StatVector gk2 = StatVector::single(Basis::G, ctx6, alias("K2"));
  StatVector square = StatVector::single(Basis::GStar, ctx6, alias("2K2"));
  CHECK(verify_identity(square, alg6.product_expand(gk2, gk2)).passed());
}

TEST_CASE("orthogonality at n = 4") {
  ProblemContext ctx(4, q(1, 3));
  std::vector<SmallGraph> keys;
  for (const SmallGraph& s : catalog())
    if (s.vertex_count() <= 4 && s.is_niv()) keys.push_back(s);
  HostGraph kn = HostGraph::complete(4);
  for (const auto& a : keys)
    for (const auto& b : keys) {
      BigRational e = exact_expectation_product(a, b, ctx);
      if (a == b)
        CHECK(e == pow(ctx.q(), a.edge_count()) * BigRational(count_subgraph_copies(a, kn)));
      else
        CHECK(e == 0);
    }
}

TEST_CASE("identity suite on small hosts") {
  IdentitySuiteReport report = run_identity_suite(4, {BigRational(1, 2), BigRational(2, 5)}, 2);
  CHECK(report.rows.size() == 2 * 3 * 5);
  CHECK(report.checks() > 0);
  CHECK(report.passed());
  for (const IdentityRow& row : report.rows) CHECK(row.hosts == static_cast<long>(identity_hosts(row.n).size()));
}
