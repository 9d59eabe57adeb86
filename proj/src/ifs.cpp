#include "sgf/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>

#include "sgf/evaluation.hpp"
#include "sgf/parallel.hpp"

namespace sgf {

namespace {

constexpr int kIterationCap = 10000;

// Nearest integer, ties toward zero.
BigInt round_half_toward_zero(const BigRational& t) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  BigRational frac = t - BigRational(fl);
  const BigRational half(1, 2);
  if (frac > half) return fl + 1;
  if (frac < half) return fl;
  return t > 0 ? fl : BigInt(fl + 1);
}

// t^2 (p(1-p))^{e(H')} > 1, i.e. |b_{H'}| > 1.
bool exceeds_unit(const BigRational& t, const SmallGraph& hp, const ProblemContext& ctx) {
  return t * t * pow(ctx.q(), hp.edge_count()) > 1;
}

IfsEntry construct_entry(const SmallGraph& h, const ProblemContext& ctx, FactorAlgebra& algebra) {
  IfsEntry entry;
  entry.h = h;
  entry.a[h] = 1;
  StatVector s = algebra.x_star_in_g_star(h);
  for (;;) {
    std::vector<SmallGraph> over;
    for (const auto& [hp, t] : s.terms())
      if (exceeds_unit(t, hp, ctx)) over.push_back(hp);
    if (over.empty()) break;
    if (++entry.iterations > kIterationCap) throw std::runtime_error("IFS construction exceeded the iteration cap for " + h.name());
    // terms() is ordered by (v, e, code), so the first maximal element is the order-least one
    const SmallGraph* pick = nullptr;
    for (const SmallGraph& cand : over) {
      bool maximal = std::none_of(over.begin(), over.end(),
                                  [&](const SmallGraph& o) { return !(o == cand) && precedes(cand, o); });
      if (maximal) {
        pick = &cand;
        break;
      }
    }
    if (pick == nullptr) throw std::logic_error("no maximal element among violating coefficients");
    const SmallGraph hp = *pick;
    if (hp == h) throw std::logic_error("leading coefficient of X*_H exceeded the unit bound");
    const BigInt k = round_half_toward_zero(s.coeff(hp));
    const StatVector shift = algebra.x_star_in_g_star(hp);
    for (const auto& [key, coeff] : shift.terms())
      if (!precedes(key, hp)) throw std::logic_error("X*_" + hp.name() + " expansion leaves its down-set");
    s.add_scaled(shift, BigRational(-k));
    entry.a[hp] -= k;
    if (entry.a[hp] == 0) entry.a.erase(hp);
    if (exceeds_unit(s.coeff(hp), hp, ctx)) throw std::logic_error("subtraction did not bring the coefficient within bounds");
  }
  entry.b = s;
  entry.c = algebra.to_g(s);
  return entry;
}

struct EtaPair {
  double b = 0, c = 0;
};

EtaPair entry_eta(const IfsEntry& e, const ProblemContext& ctx) {
  EtaPair eta;
  for (const auto& [hp, t] : e.b.terms()) eta.b = std::max(eta.b, normalized_coefficient(t, e.h, hp, ctx));
  for (const auto& [hp, u] : e.c.terms()) eta.c = std::max(eta.c, normalized_coefficient(u, e.h, hp, ctx));
  return eta;
}

}  // namespace

double normalized_coefficient(const BigRational& t, const SmallGraph& h, const SmallGraph& hp, const ProblemContext& ctx) {
  const double scale = std::pow(ctx.q().get_d(), hp.edge_count() / 2.0);
  const double room = std::pow(static_cast<double>(ctx.n), (h.vertex_count() - hp.vertex_count()) / 2.0);
  return std::fabs(t.get_d()) * scale / room;
}

IfsSystem ifs_construct(const GraphFamily& family, const ProblemContext& ctx, FactorAlgebra& algebra) {
  if (!family.downwards_closed) throw std::invalid_argument("IFS construction needs a downwards closed family");
  IfsSystem ifs;
  ifs.ctx = ctx;
  ifs.family = family;
  for (const SmallGraph& h : family.members) {
    ifs.entries.push_back(construct_entry(h, ctx, algebra));
    EtaPair eta = entry_eta(ifs.entries.back(), ctx);
    ifs.eta_b = std::max(ifs.eta_b, eta.b);
    ifs.eta_c = std::max(ifs.eta_c, eta.c);
  }
  ifs.eta = std::max(ifs.eta_b, ifs.eta_c);
  return ifs;
}

IfsSystem ifs_construct(const GraphFamily& family, const ProblemContext& ctx) {
  FactorAlgebra algebra(ctx);
  return ifs_construct(family, ctx, algebra);
}

IfsReport ifs_verify(const IfsSystem& ifs, long samples, std::uint64_t seed, int workers) {
  IfsReport rep;
  const ProblemContext& ctx = ifs.ctx;
  FactorAlgebra algebra(ctx);
  auto violation = [&](const std::string& msg) {
    ++rep.condition_violations;
    rep.messages.push_back(msg);
  };
  for (const IfsEntry& e : ifs.entries) {
    const std::string name = e.h.name();
    auto lead = e.a.find(e.h);
    if (lead == e.a.end() || lead->second != 1) violation(name + ": a_H != 1");
    if (e.b.coeff(e.h) != 1) violation(name + ": leading g* coefficient != 1");
    if (e.c.coeff(e.h) != 1) violation(name + ": leading g coefficient != 1");
    StatVector rebuilt(Basis::GStar, ctx);
    for (const auto& [hp, k] : e.a) {
      if (!hp.is_niv() || !precedes(hp, e.h)) violation(name + ": a-term " + hp.name() + " is not an NIV graph below H");
      rebuilt.add_scaled(algebra.x_star_in_g_star(hp), BigRational(k));
    }
    if (!(rebuilt == e.b)) violation(name + ": b does not match the integer X* combination");
    if (!(algebra.to_g(e.b) == e.c)) violation(name + ": c does not match b");
    for (const auto& [hp, t] : e.b.terms()) {
      if (!(hp == e.h) && t * t * pow(ctx.q(), hp.edge_count()) > 1) violation(name + ": |b_" + hp.name() + "| > 1");
    }
    EtaPair eta = entry_eta(e, ctx);
    rep.eta_b = std::max(rep.eta_b, eta.b);
    rep.eta_c = std::max(rep.eta_c, eta.c);
  }
  rep.eta = std::max(rep.eta_b, rep.eta_c);
  if (!std::isfinite(rep.eta)) violation("eta is not finite");

  std::mutex mu;
  std::vector<long> bad(static_cast<std::size_t>(samples), 0);
  parallel_shards(static_cast<std::uint64_t>(samples), workers, [&](std::uint64_t i) {
    FactorAlgebra local(ctx);
    std::mt19937_64 rng(shard_seed(seed, i));
    HostGraph g = sample_gnp(static_cast<int>(ctx.n), ctx.p, rng);
    HostStats stats(g, local);
    for (const IfsEntry& e : ifs.entries) {
      BigRational lhs = 0;
      for (const auto& [hp, k] : e.a) lhs += BigRational(k * stats.x_star(hp));
      BigRational rhs = stats.evaluate(e.c);
      if (!(lhs == rhs) || !is_integer(rhs)) {
        ++bad[i];
        std::lock_guard<std::mutex> lock(mu);
        if (rep.messages.size() < 20) rep.messages.push_back(e.h.name() + ": F_H = " + to_fraction_string(rhs) + " on " + graph6_emit(g));
      }
    }
  });
  rep.samples = samples;
  for (long b : bad) rep.integrality_violations += b;
  return rep;
}

}  // namespace sgf
