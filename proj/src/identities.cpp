#include "sgf/identities.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "sgf/catalog.hpp"
#include "sgf/counting.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/factor_algebra.hpp"
#include "sgf/host_graph.hpp"
#include "sgf/parallel.hpp"

namespace sgf {

namespace {

using Side = std::function<BigRational(DirectEvaluator&)>;

struct Instance {
  std::string label;
  Side lhs, rhs;
};

struct Group {
  std::string identity;
  std::vector<Instance> instances;
};

SmallGraph alias(const char* name) {
  SmallGraph g;
  lookup_alias(name, g);
  return g;
}

std::vector<SmallGraph> niv_graphs(int max_v) {
  std::vector<SmallGraph> out;
  for (const SmallGraph& h : catalog())
    if (h.vertex_count() <= max_v && h.is_niv() && !h.is_empty()) out.push_back(h);
  return out;
}

Group xgamma_group(FactorAlgebra& algebra, int n) {
  Group group{"xgamma", {}};
  for (const SmallGraph& h : niv_graphs(std::min(n, 5))) {
    StatVector rhs = algebra.expand_x_in_g(h);
    group.instances.push_back({h.name(), [h](DirectEvaluator& ev) { return BigRational(ev.x(h)); },
                               [rhs](DirectEvaluator& ev) { return ev.evaluate(rhs); }});
  }
  return group;
}

Group partition_group() {
  Group group{"partition", {}};
  for (const SmallGraph& h : niv_graphs(6)) {
    if (h.is_connected()) continue;
    const LabeledGraph lg = h.labeled();
    std::vector<int> comp(lg.vertex_count(), 0);
    const auto masks = lg.component_masks();
    for (std::size_t c = 0; c < masks.size(); ++c)
      for (int v = 0; v < lg.vertex_count(); ++v)
        if ((masks[c] >> v) & 1u) comp[v] = static_cast<int>(c);
    std::map<SmallGraph, long> terms;
    for_each_set_partition(
        lg.vertex_count(), [&](int u, int v) { return comp[u] != comp[v]; },
        [&](const std::vector<int>& part) {
          const SmallGraph q = quotient(h, part);
          terms[q] += q.aut_count();
        });
    const std::vector<SmallGraph> parts = h.components();
    group.instances.push_back({h.name(),
                               [parts](DirectEvaluator& ev) {
                                 BigRational prod = 1;
                                 for (const SmallGraph& c : parts) prod *= BigRational(c.aut_count() * ev.x(c));
                                 return prod;
                               },
                               [terms](DirectEvaluator& ev) {
                                 BigRational total = 0;
                                 for (const auto& [q, aut] : terms) total += BigRational(aut * ev.x(q));
                                 return total;
                               }});
  }
  return group;
}

Group addiv_group(int n) {
  Group group{"addiv", {}};
  std::vector<SmallGraph> keys{SmallGraph{}};
  for (const SmallGraph& h : niv_graphs(std::min(n - 1, 4))) keys.push_back(h);
  for (const SmallGraph& h : keys) {
    for (int m = 1; h.vertex_count() + m <= n; ++m) {
      const SmallGraph padded = h.disjoint_union(empty_graph(m));
      const BigRational factor(isolated_factor(n, h.vertex_count(), m));
      group.instances.push_back({h.name() + "+" + std::to_string(m) + "K1",
                                 [padded](DirectEvaluator& ev) { return ev.g(padded); },
                                 [h, factor](DirectEvaluator& ev) -> BigRational { return factor * ev.g(h); }});
    }
  }
  return group;
}

Group two_k2_group(const ProblemContext& ctx) {
  const SmallGraph k2 = alias("K2"), p2 = alias("P2"), two = alias("2K2");
  const BigRational linear = 1 - 2 * ctx.p;
  const BigRational constant = ctx.q() * BigRational(binom(BigInt(ctx.n), 2));
  Group group{"2k2", {}};
  group.instances.push_back({"K2^2",
                             [k2](DirectEvaluator& ev) -> BigRational {
                               const BigRational g = ev.g(k2);
                               return g * g;
                             },
                             [=](DirectEvaluator& ev) -> BigRational {
                               return 2 * ev.g(two) + 2 * ev.g(p2) + linear * ev.g(k2) + constant;
                             }});
  return group;
}

Group product_group(FactorAlgebra& algebra) {
  Group group{"product", {}};
  const std::vector<SmallGraph> keys = niv_graphs(4);
  const ProblemContext& ctx = algebra.ctx();
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i; j < keys.size(); ++j) {
      const SmallGraph h1 = keys[i], h2 = keys[j];
      if (h1.vertex_count() + h2.vertex_count() > kMaxSmallVertices) continue;
      StatVector rhs = algebra.product_expand(StatVector::single(Basis::G, ctx, h1),
                                              StatVector::single(Basis::G, ctx, h2));
      group.instances.push_back({h1.name() + "*" + h2.name(),
                                 [h1, h2](DirectEvaluator& ev) -> BigRational { return ev.g(h1) * ev.g(h2); },
                                 [rhs](DirectEvaluator& ev) { return ev.evaluate(rhs); }});
    }
  return group;
}

std::vector<IdentityRow> run_task(int n, const BigRational& p) {
  const ProblemContext ctx(n, p);
  FactorAlgebra algebra(ctx);
  std::vector<Group> groups;
  groups.push_back(xgamma_group(algebra, n));
  groups.push_back(partition_group());
  groups.push_back(addiv_group(n));
  groups.push_back(two_k2_group(ctx));
  groups.push_back(product_group(algebra));

  std::vector<IdentityRow> rows;
  for (const Group& group : groups) {
    IdentityRow row;
    row.identity = group.identity;
    row.n = n;
    row.p = p;
    row.instances = static_cast<long>(group.instances.size());
    rows.push_back(row);
  }
  for (const HostGraph& host : identity_hosts(n)) {
    DirectEvaluator ev(host, ctx);
    for (std::size_t k = 0; k < groups.size(); ++k) {
      IdentityRow& row = rows[k];
      ++row.hosts;
      for (const Instance& inst : groups[k].instances) {
        ++row.checks;
        if (inst.lhs(ev) != inst.rhs(ev)) {
          if (row.failures == 0) row.witness = inst.label + " @ " + graph6_emit(host);
          ++row.failures;
        }
      }
    }
  }
  return rows;
}

}  // namespace

long IdentitySuiteReport::checks() const {
  long total = 0;
  for (const IdentityRow& r : rows) total += r.checks;
  return total;
}

long IdentitySuiteReport::failures() const {
  long total = 0;
  for (const IdentityRow& r : rows) total += r.failures;
  return total;
}

IdentitySuiteReport run_identity_suite(int max_vertices, const std::vector<BigRational>& ps, int workers) {
  if (max_vertices < 2 || max_vertices > 7) throw std::invalid_argument("max vertices must be in 2..7");
  std::vector<std::pair<int, BigRational>> tasks;
  for (const BigRational& p : ps) {
    if (p <= 0 || p >= 1) throw std::invalid_argument("p must lie strictly between 0 and 1");
    for (int n = 2; n <= max_vertices; ++n) tasks.emplace_back(n, p);
  }
  std::vector<std::vector<IdentityRow>> results(tasks.size());
  parallel_shards(tasks.size(), workers, [&](std::uint64_t t) { results[t] = run_task(tasks[t].first, tasks[t].second); });
  IdentitySuiteReport report;
  for (auto& r : results) report.rows.insert(report.rows.end(), r.begin(), r.end());
  return report;
}

}  // namespace sgf
