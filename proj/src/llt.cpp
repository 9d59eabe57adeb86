#include "sgf/llt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sgf/counting.hpp"
#include "sgf/enumerate.hpp"
#include "sgf/parallel.hpp"

namespace sgf {

namespace {

// 0 = K2, 1 = P2, 2 = K3, -1 otherwise
int small_kind(const SmallGraph& h) {
  if (!h.is_connected()) return -1;
  if (h.vertex_count() == 2) return 0;
  if (h.vertex_count() == 3) return h.edge_count() == 2 ? 1 : 2;
  return -1;
}

bool small_family(const GraphFamily& family) {
  return std::all_of(family.members.begin(), family.members.end(), [](const SmallGraph& h) { return small_kind(h) >= 0; });
}

void require_motif_family(const GraphFamily& family) {
  for (const SmallGraph& h : family.members)
    if (!motif_supported(h)) throw std::invalid_argument(h.name() + " is not a connected graph on 2..4 vertices");
}

bool needs_four(const GraphFamily& family) {
  return std::any_of(family.members.begin(), family.members.end(), [](const SmallGraph& h) { return h.vertex_count() == 4; });
}

CountTuple project(const std::vector<int>& kinds, long e, long ch, long tri) {
  CountTuple x;
  x.reserve(kinds.size());
  for (int k : kinds) x.push_back(k == 0 ? e : k == 1 ? ch : tri);
  return x;
}

HostGraph host_from_rows(const std::uint32_t* rows, int n) {
  HostGraph g(n);
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if ((rows[v] >> w) & 1u) g.add_edge(v, w);
  return g;
}

SmallCounts counts_u64(const std::uint64_t* rows, int n) {
  SmallCounts c;
  long twice = 0, tri3 = 0;
  for (int v = 0; v < n; ++v) {
    const long d = std::popcount(rows[v]);
    twice += d;
    c.cherries += d * (d - 1) / 2;
    std::uint64_t higher = v + 1 < 64 ? rows[v] >> (v + 1) : 0;
    while (higher) {
      int w = v + 1 + std::countr_zero(higher);
      higher &= higher - 1;
      tri3 += std::popcount(rows[v] & rows[w]);
    }
  }
  c.edges = twice / 2;
  c.triangles = tri3 / 3;
  return c;
}

long sup_distance(const CountTuple& a, const CountTuple& b) {
  long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::labs(a[i] - b[i]));
  return d;
}

std::vector<double> to_double(const CountTuple& x) {
  std::vector<double> out(x.begin(), x.end());
  return out;
}

LltPoint make_point(const FactorMap& map, const GraphFamily& family, const ProblemContext& ctx, const CountTuple& x) {
  LltPoint pt;
  pt.x = x;
  pt.y = map.y_from_x(to_double(x));
  pt.predicted = llt_prediction(family, ctx, pt.y);
  return pt;
}

}  // namespace

std::vector<SigmaEntry> sigma_table(const GraphFamily& family, long n) {
  std::vector<SigmaEntry> out;
  for (const SmallGraph& h : family.members) {
    if (n < h.vertex_count()) throw std::invalid_argument("n = " + std::to_string(n) + " is smaller than v(" + h.name() + ")");
    SigmaEntry s;
    s.h = h;
    s.sigma2 = falling_factorial(BigInt(n), h.vertex_count()) / h.aut_count();
    s.sigma = std::sqrt(s.sigma2.get_d());
    out.push_back(s);
  }
  return out;
}

double standard_normal_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi); }

double llt_scale(const GraphFamily& family, const ProblemContext& ctx) {
  double s = 1;
  const double q = ctx.q().get_d();
  for (const SigmaEntry& e : sigma_table(family, ctx.n)) s *= std::pow(q, e.h.edge_count() / 2.0) * e.sigma;
  return s;
}

double llt_prediction(const GraphFamily& family, const ProblemContext& ctx, const std::vector<double>& y) {
  auto sig = sigma_table(family, ctx.n);
  if (y.size() != sig.size()) throw std::invalid_argument("tuple length does not match the family");
  double v = 1;
  for (std::size_t i = 0; i < sig.size(); ++i) v *= standard_normal_density(y[i] / sig[i].sigma);
  return v / llt_scale(family, ctx);
}

BigRational JointDistribution::total() const {
  BigRational t = 0;
  for (const auto& [x, p] : probability) t += p;
  return t;
}

CountTuple family_counts(const GraphFamily& family, const HostGraph& g) {
  require_motif_family(family);
  MotifCounts m = count_motifs(g, needs_four(family));
  CountTuple x;
  for (const SmallGraph& h : family.members) x.push_back(static_cast<long>(motif_value(m, h)));
  return x;
}

JointDistribution exact_joint_distribution(const GraphFamily& family, const ProblemContext& ctx, int workers) {
  require_motif_family(family);
  const bool fast = small_family(family);
  const int n = static_cast<int>(ctx.n);
  if (n < 0 || n > (fast ? 8 : 7))
    throw SizeLimitError("exhaustive enumeration supports n <= " + std::string(fast ? "8" : "7") + " for this family");
  JointDistribution dist;
  dist.family = family;
  dist.ctx = ctx;
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;
  const std::uint64_t shards = std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), total));
  std::mutex mu;

  if (fast) {
    std::vector<int> kinds;
    for (const SmallGraph& h : family.members) kinds.push_back(small_kind(h));
    const long dim_e = pairs + 1;
    const long dim_c = static_cast<long>(n) * std::max(0L, static_cast<long>((n - 1) * (n - 2) / 2)) + 1;
    const long dim_t = std::max(1L, static_cast<long>(n) * (n - 1) * (n - 2) / 6 + 1);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(dim_e * dim_c * dim_t), 0);
    parallel_shards(shards, workers, [&](std::uint64_t s) {
      std::vector<std::uint32_t> local(hist.size(), 0);
      const std::uint64_t first = total / shards * s;
      const std::uint64_t last = s + 1 == shards ? total : total / shards * (s + 1);
      gray_enumerate(n, first, last, [&](std::uint64_t, const std::uint32_t*, const SmallCounts& c) {
        ++local[(c.edges * dim_c + c.cherries) * dim_t + c.triangles];
      });
      std::lock_guard<std::mutex> lock(mu);
      for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += local[i];
    });
    for (long e = 0; e < dim_e; ++e)
      for (long ch = 0; ch < dim_c; ++ch)
        for (long t = 0; t < dim_t; ++t) {
          const std::uint64_t cnt = hist[(e * dim_c + ch) * dim_t + t];
          if (cnt == 0) continue;
          auto& row = dist.graphs_by_edges[project(kinds, e, ch, t)];
          row.resize(pairs + 1, 0);
          row[e] += cnt;
        }
  } else {
    parallel_shards(shards, workers, [&](std::uint64_t s) {
      std::map<CountTuple, std::vector<std::uint64_t>> local;
      const std::uint64_t first = total / shards * s;
      const std::uint64_t last = s + 1 == shards ? total : total / shards * (s + 1);
      gray_enumerate(n, first, last, [&](std::uint64_t, const std::uint32_t* rows, const SmallCounts& c) {
        auto& row = local[family_counts(family, host_from_rows(rows, n))];
        row.resize(pairs + 1, 0);
        ++row[c.edges];
      });
      std::lock_guard<std::mutex> lock(mu);
      for (auto& [x, row] : local) {
        auto& dst = dist.graphs_by_edges[x];
        dst.resize(pairs + 1, 0);
        for (long e = 0; e <= pairs; ++e) dst[e] += row[e];
      }
    });
  }
  std::vector<BigRational> weight(pairs + 1);
  for (long e = 0; e <= pairs; ++e) weight[e] = pow(ctx.p, e) * pow(1 - ctx.p, pairs - e);
  for (const auto& [x, row] : dist.graphs_by_edges) {
    BigRational pr = 0;
    for (long e = 0; e <= pairs; ++e)
      if (row[e]) pr += BigRational(BigInt(static_cast<unsigned long>(row[e]))) * weight[e];
    dist.probability[x] = pr;
  }
  return dist;
}

double McEstimate::frequency(const CountTuple& x) const {
  auto it = counts.find(x);
  return it == counts.end() || samples == 0 ? 0.0 : static_cast<double>(it->second) / samples;
}

double McEstimate::stderr_of(const CountTuple& x) const {
  if (samples == 0) return 0;
  const double f = frequency(x);
  // a zero count still carries the resolution 1/samples
  return std::max(std::sqrt(f * (1 - f) / samples), f == 0 ? 1.0 / samples : 0.0);
}

McEstimate mc_joint_estimate(const GraphFamily& family, const ProblemContext& ctx, long samples, std::uint64_t seed,
                             int workers, const CountTuple& center, long radius) {
  require_motif_family(family);
  const bool fast = small_family(family);
  if (fast ? ctx.n > 2000 : ctx.n > 200)
    throw SizeLimitError("Monte Carlo counting supports n <= " + std::string(fast ? "2000" : "200") + " for this family");
  if (samples < 0) throw std::invalid_argument("negative sample count");
  const int n = static_cast<int>(ctx.n);
  auto [a, b] = small_fraction(ctx.p);
  std::vector<int> kinds;
  if (fast)
    for (const SmallGraph& h : family.members) kinds.push_back(small_kind(h));
  McEstimate est;
  est.family = family;
  est.ctx = ctx;
  est.samples = samples;
  const std::uint64_t shards = (static_cast<std::uint64_t>(samples) + kMcShardSize - 1) / kMcShardSize;
  std::mutex mu;
  parallel_shards(shards, workers, [&](std::uint64_t s) {
    std::mt19937_64 rng(shard_seed(seed, s));
    EdgeSampler sampler(a, b);
    const std::uint64_t count = std::min<std::uint64_t>(kMcShardSize, samples - s * kMcShardSize);
    std::map<CountTuple, std::uint64_t> local;
    std::uint64_t rows[64];
    HostGraph g;
    for (std::uint64_t i = 0; i < count; ++i) {
      CountTuple x;
      if (fast && n <= 64) {
        std::fill(rows, rows + n, 0);
        for (int j = 1; j < n; ++j)
          for (int k = 0; k < j; ++k)
            if (sampler(rng)) {
              rows[j] |= std::uint64_t{1} << k;
              rows[k] |= std::uint64_t{1} << j;
            }
        SmallCounts c = counts_u64(rows, n);
        x = project(kinds, c.edges, c.cherries, c.triangles);
      } else {
        sampler.sample(n, rng, g);
        x = family_counts(family, g);
      }
      if (radius >= 0 && sup_distance(x, center) > radius) continue;
      ++local[x];
    }
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [x, c] : local) est.counts[x] += c;
  });
  return est;
}

CountTuple llt_mode(const FactorMap& map) {
  const std::size_t k = map.size();
  auto sig = sigma_table(map.family(), map.ctx().n);
  const long reach = k <= 5 ? 2 : 1;
  std::vector<double> scale(k);
  for (std::size_t i = 0; i < k; ++i) scale[i] = std::pow(map.ctx().q().get_d(), map.family().members[i].edge_count() / 2.0);
  CountTuple best, cur(k);
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> g(k, 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double score) {
    if (i == k) {
      if (score < best_score - 1e-12 || (std::fabs(score - best_score) <= 1e-12 && cur < best)) {
        best_score = score;
        best = cur;
      }
      return;
    }
    double r = 0;
    for (const auto& m : map.polynomial(i)) {
      double t = m.coeff.get_d();
      for (int f : m.factors) t *= g[f];
      r += t;
    }
    const double d = map.diagonal(i).get_d();
    const long base = static_cast<long>(std::floor(r));
    for (long x = base - reach + 1; x <= base + reach; ++x) {
      cur[i] = x;
      g[i] = (static_cast<double>(x) - r) / d;
      const double z = g[i] / scale[i] / sig[i].sigma;
      rec(i + 1, score + z * z);
    }
  };
  rec(0, 0);
  return best;
}

LltReport llt_error_report(const JointDistribution& dist) {
  LltReport rep;
  rep.family = dist.family;
  rep.ctx = dist.ctx;
  rep.sigma = sigma_table(dist.family, dist.ctx.n);
  FactorMap map(dist.family, dist.ctx);
  const double scale = llt_scale(dist.family, dist.ctx);
  const CountTuple mode = llt_mode(map);
  bool have_mode = false;
  for (const auto& [x, pr] : dist.probability) {
    LltPoint pt = make_point(map, dist.family, dist.ctx, x);
    pt.exact = pr;
    pt.scaled_error = std::fabs(pr.get_d() - pt.predicted) * scale;
    if (x == mode) {
      have_mode = true;
      rep.mode_index = rep.entries.size();
    }
    rep.entries.push_back(std::move(pt));
  }
  if (!have_mode) {
    LltPoint pt = make_point(map, dist.family, dist.ctx, mode);
    pt.exact = BigRational(0);
    pt.scaled_error = pt.predicted * scale;
    rep.mode_index = rep.entries.size();
    rep.entries.push_back(std::move(pt));
  }
  for (const LltPoint& pt : rep.entries) rep.max_scaled_error = std::max(rep.max_scaled_error, pt.scaled_error);
  return rep;
}

LltReport llt_error_report(const McEstimate& est, long radius) {
  LltReport rep;
  rep.family = est.family;
  rep.ctx = est.ctx;
  rep.sigma = sigma_table(est.family, est.ctx.n);
  FactorMap map(est.family, est.ctx);
  const double scale = llt_scale(est.family, est.ctx);
  const CountTuple mode = llt_mode(map);
  auto add = [&](const CountTuple& x) {
    LltPoint pt = make_point(map, est.family, est.ctx, x);
    pt.estimate = est.frequency(x);
    pt.stderr_value = est.stderr_of(x);
    pt.scaled_error = std::fabs(*pt.estimate - pt.predicted) * scale;
    pt.scaled_stderr = pt.stderr_value * scale;
    rep.entries.push_back(std::move(pt));
  };
  bool have_mode = false;
  for (const auto& [x, c] : est.counts) {
    if (radius >= 0 && sup_distance(x, mode) > radius) continue;
    if (x == mode) {
      have_mode = true;
      rep.mode_index = rep.entries.size();
    }
    add(x);
  }
  if (!have_mode) {
    rep.mode_index = rep.entries.size();
    add(mode);
  }
  for (const LltPoint& pt : rep.entries) rep.max_scaled_error = std::max(rep.max_scaled_error, pt.scaled_error);
  return rep;
}

CharPoint char_fn_compare(const IfsSystem& ifs, const std::vector<double>& t, long samples, std::uint64_t seed, int workers) {
  const GraphFamily& family = ifs.family;
  const ProblemContext& ctx = ifs.ctx;
  require_motif_family(family);
  if (t.size() != family.size()) throw std::invalid_argument("frequency vector length does not match the family");
  struct Term {
    double coeff;
    std::vector<int> comps;
  };
  auto split = [&](const SmallGraph& key) {
    std::vector<int> idx;
    for (const SmallGraph& c : key.components()) {
      int i = family.index_of(c);
      if (i < 0) throw std::logic_error("component " + c.name() + " outside the family");
      idx.push_back(i);
    }
    return idx;
  };
  std::vector<std::vector<Term>> x_form(family.size()), z_form(family.size());
  for (std::size_t i = 0; i < ifs.entries.size(); ++i) {
    for (const auto& [key, k] : ifs.entries[i].a) x_form[i].push_back({k.get_d(), split(key)});
    for (const auto& [key, c] : ifs.entries[i].b.terms()) z_form[i].push_back({c.get_d(), split(key)});
  }
  auto sig = sigma_table(family, ctx.n);
  std::vector<double> g_scale(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    g_scale[i] = std::pow(ctx.q().get_d(), family.members[i].edge_count() / 2.0) * sig[i].sigma;
  auto phase = [&](const std::vector<std::vector<Term>>& form, const std::vector<double>& vals) {
    double s = 0;
    for (std::size_t h = 0; h < form.size(); ++h) {
      double f = 0;
      for (const Term& term : form[h]) {
        double v = term.coeff;
        for (int c : term.comps) v *= vals[c];
        f += v;
      }
      s += t[h] * f;
    }
    return s;
  };

  const std::uint64_t shards = (static_cast<std::uint64_t>(samples) + kMcShardSize - 1) / kMcShardSize;
  std::vector<double> sx(shards * 4, 0), sz(shards * 4, 0);  // cos, sin, cos^2, sin^2
  auto [a, b] = small_fraction(ctx.p);
  parallel_shards(shards, workers, [&](std::uint64_t s) {
    const std::uint64_t count = std::min<std::uint64_t>(kMcShardSize, samples - s * kMcShardSize);
    std::mt19937_64 rng(shard_seed(seed, 2 * s));
    std::mt19937_64 zrng(shard_seed(seed, 2 * s + 1));
    std::normal_distribution<double> normal;
    EdgeSampler sampler(a, b);
    HostGraph g;
    std::vector<double> vals(family.size());
    for (std::uint64_t i = 0; i < count; ++i) {
      sampler.sample(static_cast<int>(ctx.n), rng, g);
      CountTuple x = family_counts(family, g);
      for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = static_cast<double>(x[k]);
      double ph = phase(x_form, vals);
      sx[4 * s] += std::cos(ph);
      sx[4 * s + 1] += std::sin(ph);
      sx[4 * s + 2] += std::cos(ph) * std::cos(ph);
      sx[4 * s + 3] += std::sin(ph) * std::sin(ph);
      for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = g_scale[k] * normal(zrng);
      ph = phase(z_form, vals);
      sz[4 * s] += std::cos(ph);
      sz[4 * s + 1] += std::sin(ph);
      sz[4 * s + 2] += std::cos(ph) * std::cos(ph);
      sz[4 * s + 3] += std::sin(ph) * std::sin(ph);
    }
  });
  auto finish = [&](const std::vector<double>& acc, std::complex<double>& phi, double& se) {
    double c = 0, sn = 0, c2 = 0, s2 = 0;
    for (std::uint64_t s = 0; s < shards; ++s) {
      c += acc[4 * s];
      sn += acc[4 * s + 1];
      c2 += acc[4 * s + 2];
      s2 += acc[4 * s + 3];
    }
    const double nn = static_cast<double>(samples);
    phi = {c / nn, sn / nn};
    const double var = std::max(0.0, c2 / nn - phi.real() * phi.real()) + std::max(0.0, s2 / nn - phi.imag() * phi.imag());
    se = samples > 1 ? std::sqrt(var / (nn - 1)) : 0;
  };
  CharPoint out;
  out.t = t;
  if (samples <= 0) throw std::invalid_argument("char_fn_compare needs a positive sample count");
  finish(sx, out.phi_x, out.stderr_x);
  finish(sz, out.phi_z, out.stderr_z);
  out.difference = std::abs(out.phi_x - out.phi_z);
  out.combined_stderr = std::hypot(out.stderr_x, out.stderr_z);
  return out;
}

}  // namespace sgf
