#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>

#include "sgf/counting.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/pell.hpp"
#include "sgf/proportional.hpp"
#include "sgf/search.hpp"

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

SmallGraph complement_of(const SmallGraph& h) { return SmallGraph::from(h.labeled().complement()); }

// Phi(X_H) through the algebra: expand X_H in g and substitute the values of
// the g's, given as a function of the NIV key.
BigRational via_algebra(FactorAlgebra& algebra, const SmallGraph& h,
                        const std::function<std::optional<BigRational>(const SmallGraph&)>& value) {
  BigRational total = 0;
  const StatVector x = algebra.expand_x_in_g(h);
  for (const auto& [key, c] : x.terms()) {
    std::optional<BigRational> v = value(key);
    REQUIRE_MESSAGE(v.has_value(), "unexpected key " << key.name());
    total += c * *v;
  }
  return total;
}

}  // namespace

TEST_CASE("phi coefficients from graph data") {
  SmallGraph k5 = complete_graph(5);
  SmallGraph k5e = complement_of(SmallGraph::from([] {
    LabeledGraph g(5);
    g.add_edge(0, 1);
    return g;
  }()));
  SmallGraph k5p = complement_of(SmallGraph::from([] {
    LabeledGraph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
  }()));
  const SmallGraph k2p2 = alias("K2+P2");
  struct Row {
    SmallGraph h;
    long aut, e, x;
  };
  for (const Row& r : {Row{k5, 120, 10, 30}, Row{k5e, 12, 9, 21}, Row{k5p, 4, 8, 13}}) {
    CHECK(r.h.aut_count() == r.aut);
    CHECK(r.h.edge_count() == r.e);
    CHECK(count_subgraph_copies(k2p2, HostGraph::from_labeled(r.h.labeled())) == r.x);
  }
  CHECK(hpc_graphs().size() == 30);
  // the three displayed expansions; their leading coefficients are written
  // for a = 1 and read a^2 in general, as the linear combination below needs
  for (long n : {9L, 40L, 19683L})
    for (auto [a, b] : {std::pair{1L, 2L}, {1L, 3L}, {2L, 5L}})
      for (long hv : {-7L, 6L, 123L}) {
        const BigInt N = n, A = a, B = b, H = hv;
        auto pre = [&](int ea, int eb) -> BigRational { return pow(BigRational(A), ea) / pow(BigRational(B), eb); };
        BigRational c5 = BigRational(binom(N, 5)), c3 = BigRational(binom(N - 2, 3));
        BigRational cross = BigRational((B - A) * (N - 2) * H);
        const BigRational f5 = phi_x_value(k5, N, A, B, H), f5e = phi_x_value(k5e, N, A, B, H),
                          f5p = phi_x_value(k5p, N, A, B, H);
        CHECK(f5 == pre(8, 10) * (A * A * c5 + A * c3 * H - 2 * cross));
        CHECK(f5e == pre(7, 9) * (10 * A * A * c5 + 9 * A * c3 * H - 14 * cross));
        CHECK(f5p == pre(6, 8) * (30 * A * A * c5 + 24 * A * c3 * H - 26 * cross));
        if (a == 1) {
          CHECK(f5e == pre(7, 9) * (10 * A * A * A * c5 + 9 * A * c3 * H - 14 * cross));
          CHECK(f5p == pre(6, 8) * (30 * A * A * A * c5 + 24 * A * c3 * H - 26 * cross));
        }
        BigRational combo = -30 * BigRational(B * B) * f5 + 6 * BigRational(A * B) * f5e - BigRational(A * A) * f5p;
        CHECK(combo == pre(8, 8) * 2 * cross);
        CHECK(phi_x_value(alias("K2"), N, A, B, H) == (BigRational(A * binom(N, 2)) + H) / BigRational(B));
      }
}

TEST_CASE("phi values agree with the algebra expansion") {
  const SmallGraph k2 = alias("K2"), k2p2 = alias("K2+P2");
  for (auto [a, b] : {std::pair{1L, 2L}, {1L, 3L}, {2L, 5L}}) {
    ProblemContext ctx(11, q(a, b));
    FactorAlgebra algebra(ctx);
    const BigRational hv = q(17, 3);  // any value: both sides are linear in h
    const BigRational g_k2 = hv / BigRational(b);
    auto value = [&](const SmallGraph& key) -> std::optional<BigRational> {
      if (key.is_empty()) return BigRational(1);
      if (key == k2) return g_k2;
      if (key == k2p2) return BigRational(-2 * (ctx.n - 2)) * ctx.q() * g_k2;
      if (key.vertex_count() >= 3 || key == alias("2K2")) return BigRational(0);
      return std::nullopt;
    };
    for (const SmallGraph& h : hpc_graphs())
      CHECK(phi_x_value(h, ctx.n, a, b, hv) == via_algebra(algebra, h, value));
  }
}

TEST_CASE("superproportional quantities") {
  const BigRational half = q(1, 2);
  CHECK(spc_phi_value(complete_graph(4), 64, half) == 9912);
  // displayed closed forms
  for (long n : {10L, 64L, 129L})
    for (BigRational p : {q(1, 2), q(2, 5), q(3, 7)}) {
      const BigRational c2 = BigRational(binom(BigInt(n), 2)), c3 = BigRational(binom(BigInt(n), 3)),
                        c4 = BigRational(binom(BigInt(n), 4));
      const BigRational r = 1 - p;
      CHECK(spc_phi_value(alias("K2"), n, p) == p * c2);
      CHECK(spc_phi_value(alias("P2"), n, p) == 3 * p * p * c3);
      CHECK(spc_phi_value(alias("K3"), n, p) == pow(p, 3) * c3);
      CHECK(spc_phi_value(alias("K13"), n, p) == 4 * pow(p, 3) * c4);
      CHECK(spc_phi_value(alias("P3"), n, p) == 12 * pow(p, 3) * c4 - 2 * p * p * r * c2);
      CHECK(spc_phi_value(alias("paw"), n, p) == 12 * pow(p, 4) * c4 - 2 * pow(p, 3) * r * c2);
      CHECK(spc_phi_value(cycle_graph(4), n, p) == 3 * pow(p, 4) * c4 - pow(p, 3) * r * c2);
      CHECK(spc_phi_value(alias("diamond"), n, p) == 6 * pow(p, 5) * c4 - 2 * pow(p, 4) * r * c2);
      CHECK(spc_phi_value(complete_graph(4), n, p) == pow(p, 6) * c4 - half * pow(p, 5) * r * c2);
    }
  // and through the algebra with gamma_{2K2} = -C(n,2)/2
  ProblemContext ctx(20, q(2, 5));
  FactorAlgebra algebra(ctx);
  const SmallGraph two_k2 = alias("2K2");
  auto value = [&](const SmallGraph& key) -> std::optional<BigRational> {
    if (key.is_empty()) return BigRational(1);
    if (key == two_k2) return -ctx.q() * BigRational(binom(BigInt(20), 2)) / 2;
    return BigRational(0);
  };
  for (int k = 2; k <= 4; ++k)
    for (const SmallGraph& h : connected_graphs(k)) CHECK(spc_phi_value(h, 20, ctx.p) == via_algebra(algebra, h, value));
}

TEST_CASE("PC and SPC examples and path agreement") {
  CHECK(is_pc(8, 1, 2).verdict);
  CHECK_FALSE(is_pc(9, 1, 2).verdict);
  CHECK(is_pc(81, 1, 3).verdict);
  CHECK(is_spc(64, 1, 2).verdict);
  CHECK_FALSE(is_spc(8, 1, 2).verdict);
  for (long a = 1; a <= 4; ++a) CHECK(is_spc(15625, a, 5).verdict);
  CHECK(is_pc(8, 1, 2, CheckPath::Characterization).oracle == std::nullopt);
  CHECK_THROWS_AS(is_pc(10, 2, 4), std::invalid_argument);
  long mismatches = 0;
  for (long b = 2; b <= 8; ++b)
    for (long a = 1; a < b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      for (long n = 4; n <= 3000; ++n) {
        mismatches += !is_pc(n, a, b).consistent();
        if (n % 7 == 0 || n % 64 <= 1) mismatches += !is_spc(n, a, b).consistent();
      }
    }
  CHECK(mismatches == 0);
}

TEST_CASE("HPC checker examples") {
  HpcWitness plus = is_hpc(19683, 1, 3, HpcSign::Plus);
  CHECK(plus.verdict);
  CHECK(*plus.h == 19683);
  CHECK_FALSE(is_hpc(19683, 1, 3, HpcSign::Minus).verdict);
  HpcWitness nine = is_hpc(9, 1, 2, HpcSign::Plus);
  CHECK_FALSE(nine.verdict);
  CHECK(nine.D == 144);
  CHECK(*nine.sqrtD == 12);
  CHECK(*nine.h == 6);
  REQUIRE(nine.failing_H.has_value());
  CHECK(nine.failing_H->vertex_count() >= 3);
  HpcWitness odd = is_hpc(10, 1, 2, HpcSign::Plus);
  CHECK_FALSE(odd.sqrtD.has_value());
  CHECK_FALSE(odd.verdict);
  for (long n = 5; n <= 300; ++n) {
    BigInt two_n = 2 * n - 1;
    CHECK(hpc_discriminant(n, 1, 3) == two_n * two_n);
    CHECK(*is_hpc(n, 1, 3, HpcSign::Plus).h == n);
    CHECK(*is_hpc(n, 1, 3, HpcSign::Minus).h == 1 - n);
    CHECK(*is_hpc(n, 2, 3, HpcSign::Plus).h == n - 1);
    CHECK(*is_hpc(n, 2, 3, HpcSign::Minus).h == -n);
  }
}

TEST_CASE("Pell solutions") {
  PellSolution two = pell_fundamental(2);
  CHECK(two.r == 3);
  CHECK(two.s == 2);
  PellSolution three = pell_fundamental(3);
  CHECK(three.r == 2);
  CHECK(three.s == 1);
  CHECK_THROWS_AS(pell_fundamental(4), std::domain_error);
  for (long d : {2L, 3L, 5L, 6L, 7L, 8L, 10L, 13L, 29L}) {
    PellSolution f = pell_fundamental(d);
    // minimality by scan
    long s = 1;
    while (true) {
      IsqrtResult r = isqrt_exact(BigInt(1) + BigInt(d) * s * s);
      if (r.is_square) break;
      ++s;
    }
    CHECK(f.s == s);
    if (d > 10) continue;
    BigInt prev = f.r;
    for (const PellSolution& p : pell_iterate(f, 1000)) {
      REQUIRE(p.r * p.r - p.d * p.s * p.s == 1);
      REQUIRE(p.r > prev);
      prev = p.r;
    }
  }
}

TEST_CASE("half candidates and the smallest HPC number") {
  auto cands = hpc_half_candidates(100);
  CHECK(cands[0].a == 2);
  CHECK(cands[0].n == 9);
  CHECK(cands[1].n == 50);
  for (const HalfCandidate& c : cands) CHECK(isqrt_exact(binom(c.n, 2)).is_square);
  BigInt n = smallest_hpc_half();
  std::string text = to_decimal(n);
  CHECK(text == smallest_hpc_half_reference());
  CHECK(text.size() == 391);
  CHECK(text.rfind("393269643", 0) == 0);
  CHECK(is_hpc(n, 1, 2, HpcSign::Plus).verdict);
  CHECK(is_hpc(n, 1, 2, HpcSign::Minus).verdict);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("HPC scans") {
  HpcScanOptions brute;
  brute.n_max = 59049;
  brute.workers = 2;
  std::set<BigInt> found;
  for (const HpcWitness& w : hpc_scan(1, 3, HpcSign::Plus, brute).accepted) {
    found.insert(w.n);
    CHECK((BigInt(1) * binom(w.n, 2) + *w.h) % 3 == 0);
    CHECK((2 * *w.h * (w.n - 2)) % 6561 == 0);
  }
  CHECK(found == std::set<BigInt>{19683, 39366, 59049});

  brute.n_max = 200000;
  CHECK(hpc_scan(1, 2, HpcSign::Plus, brute).accepted.empty());

  HpcScanOptions pell;
  pell.mode = HpcScanMode::Pell;
  pell.max_digits = 400;
  auto half = hpc_scan(1, 2, HpcSign::Minus, pell);
  // a = 511 and a = 513 fall below 10^400
  auto cands = hpc_half_candidates(513);
  REQUIRE(half.accepted.size() == 2);
  CHECK(half.accepted[0].n == smallest_hpc_half());
  CHECK(half.accepted[1].n == cands.back().n);

  pell.max_digits = 80;
  auto fifth = hpc_scan(1, 5, HpcSign::Plus, pell);
  CHECK(fifth.tested > 0);
  for (const HpcWitness& w : fifth.accepted) CHECK(is_hpc(w.n, 1, 5, HpcSign::Plus).verdict);

  HpcScanOptions gen;
  gen.mode = HpcScanMode::Congruence;
  gen.max_digits = 200;
  auto generated = hpc_scan(1, 5, HpcSign::Plus, gen);
  CHECK_FALSE(generated.note.empty());
  for (const HpcWitness& w : generated.accepted) CHECK(is_hpc(w.n, 1, 5, HpcSign::Plus).verdict);
  auto third = hpc_scan(1, 3, HpcSign::Minus, gen);
  CHECK(third.accepted.size() == 3);
  CHECK_THROWS_AS(hpc_scan(1, 3, HpcSign::Plus, pell), std::invalid_argument);
}

TEST_CASE("unit order modulo prime powers") {
  // 3 + 2 sqrt 2 has order 2^9 mod 2^10 and 2^10 mod 2^11
  CHECK(unit_order_mod(2, 3, 2, {{2, 10}}) == 512);
  CHECK(unit_order_mod(2, 3, 2, {{2, 11}}) == 1024);
}

TEST_CASE("count prediction") {
  ProblemContext ctx(8, q(1, 2));
  CountPrediction pred = predicted_count_proportional(family("C2,C3"), ctx);
  const double expected = std::sqrt(2.0) * std::sqrt(2.0) * std::sqrt(6.0) /
                          (std::pow(2 * std::numbers::pi, 1.5) * std::pow(8.0, 4) * std::pow(0.25, 3));
  CHECK(pred.probability == doctest::Approx(expected));
  REQUIRE(pred.count.has_value());
  CHECK(*pred.count == doctest::Approx(expected * std::pow(2.0, 28)));
  CHECK(*pred.edges == 14);
  CHECK_THROWS_AS(predicted_count_proportional(family("C2,C3"), ProblemContext(9, q(1, 2))), NotPermissibleError);
}

TEST_CASE("proportional search") {
  CHECK_FALSE(is_hat_proportional(HostGraph::complete(5), q(1, 2), family("C2,C3")));
  SearchOptions opt;
  SearchResult edges = search_proportional(ProblemContext(5, q(1, 2)), family("K2"), opt);
  CHECK(edges.count == 252);
  CHECK(edges.verified == 252);
  CHECK(search_proportional(ProblemContext(5, q(1, 2)), family("C2,C3"), opt).count == 0);
  // brute force over all 6-vertex graphs for a family with a nontrivial target
  ProblemContext c6(6, q(1, 3));
  SearchResult six = search_proportional(c6, family("K2,P2"), opt);
  long brute = 0;
  for (std::uint64_t mask = 0; mask < (1u << 15); ++mask) {
    HostGraph g(6);
    int k = 0;
    for (int j = 1; j < 6; ++j)
      for (int i = 0; i < j; ++i, ++k)
        if ((mask >> k) & 1u) g.add_edge(i, j);
    brute += is_hat_proportional(g, c6.p, family("K2,P2"));
  }
  CHECK(six.count == static_cast<std::uint64_t>(brute));

  SearchOptions an;
  an.mode = SearchMode::Anneal;
  an.seed = 3;
  an.want = 2;
  SearchResult found = search_proportional(ProblemContext(16, q(1, 2)), family("C2,C3"), an);
  CHECK(found.graphs.size() == 2);
  CHECK(found.verified == 2);
  for (const std::string& g6 : found.graphs) CHECK(graph6_parse(g6).edge_count() == 60);
}
