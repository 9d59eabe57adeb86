#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "sgf/catalog.hpp"
#include "sgf/counting.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/small_graph.hpp"

using namespace sgf;

namespace {

SmallGraph alias(const std::string& name) {
  SmallGraph g;
  REQUIRE(lookup_alias(name, g));
  return g;
}

long brute_aut(const LabeledGraph& g) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    if (g.permuted(perm) == g) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

HostGraph random_host(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  HostGraph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

HostGraph labeled_from_mask(int n, std::uint32_t mask) {
  HostGraph g(n);
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if ((mask >> k) & 1u) g.add_edge(i, j);
  return g;
}

// complement of P2 ⊔ 2K1: vertices a-b-c path plus isolated d,e, complemented
HostGraph complement_p2_2k1() {
  LabeledGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return HostGraph::from_labeled(g.complement());
}

}  // namespace

TEST_CASE("K3 canonical code is labeling independent") {
  std::vector<int> perm{0, 1, 2};
  LabeledGraph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(1, 2);
  k3.add_edge(0, 2);
  std::set<std::string> codes;
  do {
    codes.insert(SmallGraph::from(k3.permuted(perm)).canonical_code());
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(codes.size() == 1);
  CHECK(*codes.begin() == "Bw");
}

TEST_CASE("automorphism counts") {
  CHECK(complete_graph(5).aut_count() == 120);
  LabeledGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  CHECK(SmallGraph::from(g.complement()).aut_count() == 4);
  CHECK(SmallGraph().aut_count() == 1);
  CHECK(SmallGraph().is_niv());
  CHECK(cycle_graph(5).aut_count() == 10);
  CHECK(empty_graph(3).aut_count() == 6);
  CHECK_THROWS_AS(SmallGraph::from(LabeledGraph(8)), SizeLimitError);
}

TEST_CASE("orbit counting certifies canonical form and aut on all labeled graphs up to 6 vertices") {
  const long expected_classes[] = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 0; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::map<std::uint32_t, std::pair<SmallGraph, long>> seen;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      LabeledGraph g(n);
      int k = 0;
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
          if ((mask >> k) & 1u) g.add_edge(i, j);
      SmallGraph s = SmallGraph::from(g);
      auto& slot = seen[s.code()];
      slot.first = s;
      ++slot.second;
    }
    CHECK(static_cast<long>(seen.size()) == expected_classes[n]);
    long factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    for (auto& [code, entry] : seen) {
      CHECK(factorial % entry.first.aut_count() == 0);
      // orbit-stabilizer: the class has exactly n!/aut labeled members
      CHECK(entry.second == factorial / entry.first.aut_count());
    }
  }
}

TEST_CASE("aut matches a permutation brute force on the 7-vertex catalog sample") {
  int checked = 0;
  for (const SmallGraph& s : catalog()) {
    if (s.vertex_count() == 7 && (s.code() % 7) != 0) continue;
    CHECK(brute_aut(s.labeled()) == s.aut_count());
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("catalog sizes and connected classes") {
  CHECK(catalog().size() == 1253);
  CHECK(connected_graphs(3).size() == 2);
  CHECK(connected_graphs(4).size() == 6);
  CHECK(connected_graphs(5).size() == 21);
  CHECK(connected_graphs(6).size() == 112);
  CHECK(connected_graphs(7).size() == 853);
  auto c3 = family("C3");
  REQUIRE(c3.size() == 2);
  CHECK(c3.members[0] == alias("P2"));
  CHECK(c3.members[1] == alias("K3"));
  CHECK(family("C4").size() == 6);
  CHECK(family("C5").size() == 21);
  CHECK(family("C3,C4,C5,2K2").size() == 30);
  CHECK_THROWS_AS(family("C3,bogus"), std::invalid_argument);
  CHECK(family("Cyc4").members[0] == cycle_graph(4));
}

TEST_CASE("catalog order is a linear extension of the subgraph order") {
  const auto& cat = catalog();
  for (std::size_t i = 0; i < cat.size(); i += 7)
    for (std::size_t j = 0; j < i; ++j)
      CHECK_FALSE(precedes(cat[i], cat[j]));
}

TEST_CASE("precedes examples") {
  CHECK(precedes(alias("K2"), alias("P2")));
  CHECK(precedes(alias("P2"), alias("2K2")));
  CHECK_FALSE(precedes(alias("K3"), alias("C4")));
  CHECK(precedes(SmallGraph(), alias("K3")));
  CHECK(precedes(alias("K3"), alias("K3")));
  CHECK(precedes(alias("C4"), alias("K4")));
  CHECK(precedes(alias("K2"), alias("2K2")));
}

TEST_CASE("precedes is antisymmetric on graphs up to 5 vertices") {
  std::vector<SmallGraph> small;
  for (const SmallGraph& s : catalog())
    if (s.vertex_count() <= 5) small.push_back(s);
  for (const auto& a : small)
    for (const auto& b : small)
      if (!(a == b)) CHECK_FALSE((precedes(a, b) && precedes(b, a)));
}

TEST_CASE("connected class unions are downwards closed") {
  std::string sel = "C2";
  for (int k = 2; k <= 7; ++k) {
    if (k > 2) sel += ",C" + std::to_string(k);
    CHECK(family(sel).downwards_closed);
  }
  CHECK_FALSE(family("K3").downwards_closed);
  CHECK_FALSE(family("K2,K3").downwards_closed);
  CHECK(family("K2,P2,K3").downwards_closed);
}

TEST_CASE("quotients") {
  // 2K2 with a-b, c-d; merge b and c
  LabeledGraph two_k2(4);
  two_k2.add_edge(0, 1);
  two_k2.add_edge(2, 3);
  CHECK(SmallGraph::from(quotient(two_k2, {0, 1, 1, 2})) == alias("P2"));
  CHECK(SmallGraph::from(quotient(two_k2, {0, 1, 2, 3})) == alias("2K2"));
  LabeledGraph p2(3);
  p2.add_edge(0, 1);
  p2.add_edge(1, 2);
  CHECK(SmallGraph::from(quotient(p2, {0, 1, 0})) == alias("K2"));
  CHECK_THROWS_AS(quotient(p2, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("graph6 round trips") {
  HostGraph k3 = graph6_parse("Bw");
  CHECK(k3.n() == 3);
  CHECK(k3.edge_count() == 3);
  CHECK(graph6_emit(k3) == "Bw");
  HostGraph empty = graph6_parse("?");
  CHECK(empty.n() == 0);
  CHECK(graph6_emit(HostGraph(0)) == "?");
  CHECK_THROWS_AS(graph6_parse("Bw~"), ParseError);
  CHECK_THROWS_AS(graph6_parse("D"), ParseError);
  CHECK_THROWS_AS(graph6_parse("B\x01"), ParseError);

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    int n = static_cast<int>(rng() % 90);
    HostGraph g = random_host(n, 0.3, rng);
    REQUIRE(g.check_invariants());
    HostGraph back = graph6_parse(graph6_emit(g));
    REQUIRE(back == g);
  }
  HostGraph big = random_host(300, 0.05, rng);
  CHECK(graph6_parse(graph6_emit(big)) == big);
}

TEST_CASE("subgraph count examples") {
  SmallGraph k2p2 = alias("K2+P2");
  CHECK(count_subgraph_copies(k2p2, HostGraph::complete(5)) == 30);
  CHECK(count_subgraph_copies(k2p2, complement_p2_2k1()) == 13);
  for (int n = 2; n <= 12; ++n) CHECK(count_subgraph_copies(alias("K2"), HostGraph::complete(n)) == n * (n - 1) / 2);
  CHECK(count_subgraph_copies(SmallGraph(), HostGraph(4)) == 1);
}

TEST_CASE("embedding search agrees with the naive count") {
  std::vector<SmallGraph> patterns;
  for (const SmallGraph& s : catalog())
    if (s.vertex_count() >= 1 && s.vertex_count() <= 5) patterns.push_back(s);
  std::vector<HostGraph> hosts;
  for (int n = 1; n <= 6; ++n)
    for (const SmallGraph& s : catalog())
      if (s.vertex_count() == n) hosts.push_back(HostGraph::from_labeled(s.labeled()));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) hosts.push_back(random_host(7 + t % 2, 0.5, rng));
  for (const HostGraph& g : hosts)
    for (const SmallGraph& h : patterns) {
      BigInt inj = count_injective(h, g);
      REQUIRE(inj == count_injective_naive(h, g));
      REQUIRE(inj == count_subgraph_copies(h, g) * h.aut_count());
    }
}

TEST_CASE("motif formulas agree with embedding search, including multiword hosts") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> names{"K2", "P2", "K3", "K13", "P3", "C4", "paw", "diamond", "K4"};
  for (int t = 0; t < 30; ++t) {
    int n = t < 20 ? 5 + t : 70 + t;
    HostGraph g = random_host(n, t < 20 ? 0.5 : 0.2, rng);
    MotifCounts m = count_motifs(g);
    for (const auto& name : names) {
      SmallGraph h = alias(name);
      REQUIRE(motif_supported(h));
      CHECK(BigInt(static_cast<long>(motif_value(m, h))) == count_subgraph_copies(h, g));
    }
  }
}

TEST_CASE("partition identity reproduces disconnected counts") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    HostGraph g = random_host(8 + t % 5, 0.45, rng);
    auto connected_count = [&](const SmallGraph& c) { return count_subgraph_copies(c, g); };
    for (const SmallGraph& s : catalog()) {
      if (s.vertex_count() > 6 || s.is_connected() || s.vertex_count() < 2) continue;
      if (s.code() % 5 != static_cast<std::uint32_t>(t % 5)) continue;
      CHECK(count_via_partitions(s, g, connected_count) == count_subgraph_copies(s, g));
    }
  }
}

TEST_CASE("size limits on large hosts") {
  HostGraph g(100);
  CHECK_THROWS_AS(count_subgraph_copies(complete_graph(6), g), SizeLimitError);
  CHECK(count_subgraph_copies(complete_graph(5), g) == 0);
  CHECK(count_subgraph_copies(complete_graph(3), HostGraph::complete(100)) == 161700);
}
