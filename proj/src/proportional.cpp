#include "sgf/proportional.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "sgf/counting.hpp"
#include "sgf/evaluation.hpp"
#include "sgf/factor_map.hpp"
#include "sgf/parallel.hpp"

namespace sgf {

namespace {

SmallGraph alias(const char* name) {
  SmallGraph g;
  if (!lookup_alias(name, g)) throw std::logic_error(std::string("missing alias ") + name);
  return g;
}

void require_fraction(const BigInt& a, const BigInt& b) {
  if (a <= 0 || b <= a) throw std::invalid_argument("p = a/b needs 0 < a < b");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) throw std::invalid_argument("p = a/b needs gcd(a, b) = 1");
}

std::uint64_t small_denominator(const BigInt& b) {
  if (!b.fits_ulong_p()) throw std::invalid_argument("denominator too large to factor");
  return b.get_ui();
}

BigRational fraction(const BigInt& a, const BigInt& b) {
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

BigInt power(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

BigInt count_in(const SmallGraph& pattern, const SmallGraph& h) {
  return count_subgraph_copies(pattern, HostGraph::from_labeled(h.labeled()));
}

BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string("non-integral coefficient: ") + what);
  return num / den;
}

}  // namespace

bool is_hat_proportional(const HostGraph& g, const BigRational& p, const GraphFamily& family) {
  for (const SmallGraph& h : family.members)
    if (h.vertex_count() > g.n()) return false;
  ProblemContext ctx(g.n(), p);
  for (const SmallGraph& h : family.members)
    if (scaled_factor_value(h, g, ctx) != 0) return false;
  return true;
}

const std::vector<SmallGraph>& hpc_graphs() {
  static const std::vector<SmallGraph> graphs = [] {
    std::vector<SmallGraph> out;
    for (int k = 2; k <= 5; ++k)
      for (const SmallGraph& h : connected_graphs(k)) out.push_back(h);
    return out;
  }();
  return graphs;
}

const PhiCoefficients& phi_coefficients(const SmallGraph& h) {
  static const std::map<SmallGraph, PhiCoefficients> table = [] {
    std::map<SmallGraph, PhiCoefficients> out;
    const SmallGraph k2p2 = alias("K2+P2");
    for (const SmallGraph& g : hpc_graphs()) {
      const BigInt aut = g.aut_count();
      const int v = g.vertex_count();
      PhiCoefficients c{g, 0, 0, 0};
      c.leading = exact_quotient(factorial(v), aut, "v!/aut");
      c.linear = exact_quotient(2 * factorial(v - 2) * g.edge_count(), aut, "2(v-2)!e/aut");
      if (v == 5) c.cross = exact_quotient(4 * count_in(k2p2, g), aut, "4X/aut");
      out.emplace(g, c);
    }
    return out;
  }();
  auto it = table.find(h);
  if (it == table.end()) throw std::invalid_argument("phi coefficients need a connected graph on 2..5 vertices");
  return it->second;
}

BigRational phi_x_value(const SmallGraph& h, const BigInt& n, const BigInt& a, const BigInt& b,
                        const BigRational& h_value) {
  const PhiCoefficients& c = phi_coefficients(h);
  const int v = h.vertex_count();
  const int e = h.edge_count();
  BigRational inner = BigRational(c.leading * a * a * binom(n, v)) +
                      BigRational(c.linear * a * binom(n - 2, v - 2)) * h_value -
                      BigRational(2 * c.cross * (b - a) * (n - 2)) * h_value;
  return pow(BigRational(a), e - 2) / BigRational(power(b, e)) * inner;
}

namespace {

CompatVerdict run_paths(CheckPath path, const std::function<bool(std::string&)>& characterization,
                        const std::function<bool(std::string&)>& oracle) {
  CompatVerdict out;
  std::string c_detail, o_detail;
  if (path != CheckPath::Oracle) out.characterization = characterization(c_detail);
  if (path != CheckPath::Characterization) out.oracle = oracle(o_detail);
  out.verdict = out.oracle ? *out.oracle : *out.characterization;
  out.detail = !o_detail.empty() ? o_detail : c_detail;
  return out;
}

unsigned nu(std::uint64_t q, const BigInt& m) { return valuation(q, m); }

}  // namespace

CompatVerdict is_pc(const BigInt& n, const BigInt& a, const BigInt& b, CheckPath path) {
  require_fraction(a, b);
  if (n < 3) throw std::invalid_argument("is_pc needs n >= 3");
  auto characterization = [&](std::string& detail) {
    for (auto [q, k] : factor_small(small_denominator(b))) {
      const unsigned v0 = nu(q, n), v1 = nu(q, n - 1);
      bool ok;
      if (q == 2)
        ok = v0 >= 3 * k || v1 >= 3 * k + 1;
      else if (q == 3)
        ok = std::max(v0, v1) >= 3 * k + 1;
      else
        ok = std::max(v0, v1) >= 3 * k;
      if (!ok) {
        detail = "valuation condition fails at prime " + std::to_string(q);
        return false;
      }
    }
    return true;
  };
  auto oracle = [&](std::string& detail) {
    const BigRational p = fraction(a, b);
    for (int k = 2; k <= 3; ++k)
      for (const SmallGraph& h : connected_graphs(k)) {
        BigRational value = pow(p, h.edge_count()) *
                            BigRational(factorial(k) * binom(n, k)) / BigRational(BigInt(h.aut_count()));
        if (!is_integer(value)) {
          detail = "Phi(X_" + h.name() + ") = " + to_fraction_string(value);
          return false;
        }
      }
    return true;
  };
  return run_paths(path, characterization, oracle);
}

BigRational spc_phi_value(const SmallGraph& h, const BigInt& n, const BigRational& p) {
  static const SmallGraph two_k2 = alias("2K2");
  const int v = h.vertex_count(), e = h.edge_count();
  const BigRational aut(BigInt(h.aut_count()));
  BigRational main = pow(p, e) * BigRational(factorial(v) * binom(n, v)) / aut;
  BigRational x2k2(count_in(two_k2, h));
  return main - pow(p, e - 1) * (1 - p) * 4 * x2k2 / aut * BigRational(binom(n, 2));
}

CompatVerdict is_spc(const BigInt& n, const BigInt& a, const BigInt& b, CheckPath path) {
  require_fraction(a, b);
  if (n < 4) throw std::invalid_argument("is_spc needs n >= 4");
  auto characterization = [&](std::string& detail) {
    for (auto [q, k] : factor_small(small_denominator(b))) {
      const unsigned v0 = nu(q, n), v1 = nu(q, n - 1);
      bool ok;
      if (q == 2) {
        if (k == 1)
          ok = v0 >= 6 || v1 >= 7;
        else if (k == 2)
          ok = v0 >= 13 || v1 >= 11;
        else
          ok = v0 >= 6 * k + 1 || v1 >= 6 * k;
      } else if (q == 3) {
        ok = v0 >= 6 * k || v1 >= 6 * k + 1;
      } else {
        ok = std::max(v0, v1) >= 6 * k;
      }
      if (!ok) {
        detail = "valuation condition fails at prime " + std::to_string(q);
        return false;
      }
    }
    return true;
  };
  auto oracle = [&](std::string& detail) {
    const BigRational p = fraction(a, b);
    for (int k = 2; k <= 4; ++k)
      for (const SmallGraph& h : connected_graphs(k)) {
        BigRational value = spc_phi_value(h, n, p);
        if (!is_integer(value)) {
          detail = "Phi(X_" + h.name() + ") = " + to_fraction_string(value);
          return false;
        }
      }
    return true;
  };
  return run_paths(path, characterization, oracle);
}

char sign_char(HpcSign s) { return s == HpcSign::Plus ? '+' : '-'; }

HpcSign parse_sign(const std::string& text) {
  if (text == "+" || text == "plus") return HpcSign::Plus;
  if (text == "-" || text == "minus") return HpcSign::Minus;
  throw std::invalid_argument("sign must be + or -");
}

BigInt hpc_discriminant(const BigInt& n, const BigInt& a, const BigInt& b) {
  BigInt c = b - 2 * a;
  return 2 * a * (b - a) * n * (n - 1) + c * c;
}

HpcWitness is_hpc(const BigInt& n, const BigInt& a, const BigInt& b, HpcSign sign) {
  require_fraction(a, b);
  if (n < 5) throw std::invalid_argument("is_hpc needs n >= 5");
  static const SmallGraph k2 = alias("K2");
  HpcWitness w{n, a, b, sign, hpc_discriminant(n, a, b), {}, {}, false, {}, {}};
  IsqrtResult root = isqrt_exact(w.D);
  if (!root.is_square) {
    w.failing_H = k2;
    w.reason = "D is not a perfect square";
    return w;
  }
  w.sqrtD = root.root;
  BigInt twice_h = b - 2 * a + (sign == HpcSign::Plus ? root.root : BigInt(-root.root));
  w.h = exact_quotient(twice_h, 2, "h");
  const BigInt& h = *w.h;
  if ((a * binom(n, 2) + h) % b != 0) {
    w.failing_H = k2;
    w.reason = "(a C(n,2) + h)/b is not an integer";
    return w;
  }
  const bool filtered = (2 * h * (n - 2)) % power(b, 8) != 0;
  if (filtered) w.reason = "b^8 does not divide 2h(n-2)";
  const BigRational hq(h);
  for (const SmallGraph& g : hpc_graphs()) {
    if (g.vertex_count() < 3) continue;
    if (!is_integer(phi_x_value(g, n, a, b, hq))) {
      w.failing_H = g;
      if (w.reason.empty()) w.reason = "Phi(X_H) is not an integer";
      return w;
    }
  }
  if (filtered) throw std::logic_error("necessary condition failed although every Phi(X_H) is integral");
  w.verdict = true;
  w.reason.clear();
  return w;
}

namespace {

using QuadPair = std::pair<BigInt, BigInt>;

QuadPair mul_mod(const BigInt& d, const QuadPair& u, const QuadPair& w, const BigInt& m) {
  BigInt x = (u.first * w.first + d * u.second * w.second) % m;
  BigInt y = (u.first * w.second + u.second * w.first) % m;
  if (x < 0) x += m;
  if (y < 0) y += m;
  return {x, y};
}

QuadPair pow_mod(const BigInt& d, QuadPair base, BigInt e, const BigInt& m) {
  QuadPair acc{BigInt(1) % m, 0};
  base.first %= m;
  base.second %= m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = mul_mod(d, acc, base, m);
    base = mul_mod(d, base, base, m);
    e /= 2;
  }
  return acc;
}

bool is_one(const QuadPair& u, const BigInt& m) { return u.first == BigInt(1) % m && u.second == 0; }

/// (x + y sqrt d)^e exactly.
QuadPair pow_exact(const BigInt& d, const QuadPair& base, BigInt e) {
  BigInt x = 1, y = 0, bx = base.first, by = base.second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) quadratic_multiply(d, x, y, bx, by);
    BigInt sx = bx, sy = by;
    quadratic_multiply(d, bx, by, sx, sy);
    e /= 2;
  }
  return {x, y};
}

/// n with D a perfect square, 5 <= n <= limit.
std::set<BigInt> square_discriminant_values(const BigInt& a, const BigInt& b, const BigInt& limit) {
  const BigInt d = 2 * a * (b - a);
  const BigInt N = 2 * (3 * a - b) * (3 * a - 2 * b);
  if (N == 0) throw std::invalid_argument("D = (2n-1)^2 for every n at this p; use the brute or congruence scan");
  std::set<BigInt> out;
  auto take = [&](BigInt u) {
    u = abs(u);
    if (!mpz_odd_p(u.get_mpz_t())) return;
    BigInt n = (u + 1) / 2;
    if (n >= 5 && n <= limit) out.insert(n);
  };
  IsqrtResult root = isqrt_exact(d);
  if (root.is_square) {
    // (T - kU)(T + kU) = N has finitely many solutions
    const BigInt k = root.root;
    const BigInt absN = abs(N);
    const BigInt top = isqrt_exact(absN).root;
    if (top > 100'000'000) throw CapError("divisor search for N exceeds cap");
    for (BigInt e1 = 1; e1 <= top; ++e1) {
      if (absN % e1 != 0) continue;
      const BigInt e2 = absN / e1;
      for (const BigInt& f1 : {e1, BigInt(-e1), e2, BigInt(-e2)}) {
        const BigInt f2 = N / f1;
        if ((f1 + f2) % 2 == 0 && (f2 - f1) % (2 * k) == 0) take((f2 - f1) / (2 * k));
      }
    }
    return out;
  }
  GeneralizedPellBase base = generalized_pell_classes(d, N);
  const BigInt bound = 2 * limit;
  for (const auto& [t0, u0] : base.classes) {
    BigInt x = t0, y = u0;
    for (int back = 0; back < 2; ++back) quadratic_multiply(d, x, y, base.unit.r, BigInt(-base.unit.s));
    for (int step = 0;; ++step) {
      take(y);
      if (step > 4 && abs(y) > bound) break;
      quadratic_multiply(d, x, y, base.unit.r, base.unit.s);
    }
  }
  return out;
}

BigInt ten_power(long digits) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return out;
}

}  // namespace

BigInt unit_order_mod(const BigInt& d, const BigInt& r, const BigInt& s,
                      const std::vector<std::pair<std::uint64_t, unsigned>>& modulus, long max_base) {
  BigInt total = 1;
  const QuadPair unit{r, s};
  for (auto [q, k] : modulus) {
    const BigInt qq(static_cast<unsigned long>(q));
    QuadPair cur = pow_mod(d, unit, 1, qq);
    BigInt order = 1;
    while (!is_one(cur, qq)) {
      if (order >= max_base) throw CapError("unit order search at prime " + std::to_string(q) + " exceeds cap");
      cur = mul_mod(d, cur, unit, qq);
      ++order;
    }
    BigInt mod = qq;
    for (unsigned level = 2; level <= k; ++level) {
      mod *= qq;
      if (!is_one(pow_mod(d, unit, order, mod), mod)) order *= qq;
    }
    mpz_lcm(total.get_mpz_t(), total.get_mpz_t(), order.get_mpz_t());
  }
  return total;
}

HpcScanResult hpc_scan(const BigInt& a, const BigInt& b, HpcSign sign, const HpcScanOptions& options) {
  require_fraction(a, b);
  HpcScanResult out;
  if (options.mode == HpcScanMode::Brute) {
    if (!options.n_max.fits_slong_p()) throw std::invalid_argument("brute scan bound too large");
    const long n_max = options.n_max.get_si();
    if (n_max < 5) return out;
    constexpr long kChunk = 4096;
    const std::uint64_t chunks = static_cast<std::uint64_t>((n_max - 5) / kChunk + 1);
    std::vector<std::vector<HpcWitness>> found(chunks);
    parallel_shards(chunks, options.workers, [&](std::uint64_t c) {
      const long lo = 5 + static_cast<long>(c) * kChunk;
      const long hi = std::min(n_max, lo + kChunk - 1);
      for (long n = lo; n <= hi; ++n) {
        HpcWitness w = is_hpc(BigInt(n), a, b, sign);
        if (w.verdict) found[c].push_back(std::move(w));
      }
    });
    for (auto& part : found)
      for (auto& w : part) out.accepted.push_back(std::move(w));
    out.tested = n_max - 4;
    return out;
  }

  const BigInt limit = ten_power(options.max_digits);
  const BigInt d = 2 * a * (b - a);
  const BigInt N = 2 * (3 * a - b) * (3 * a - 2 * b);
  if (options.mode == HpcScanMode::Pell) {
    for (const BigInt& n : square_discriminant_values(a, b, limit)) {
      ++out.tested;
      HpcWitness w = is_hpc(n, a, b, sign);
      if (w.verdict) out.accepted.push_back(std::move(w));
    }
    out.note = "all n <= 10^" + std::to_string(options.max_digits) + " with D a perfect square were checked";
    return out;
  }

  // congruence generator: n = 2 mod 2b^12 and D square
  const BigInt b12 = power(b, 12);
  const BigInt step = 2 * b12;
  auto emit = [&](const BigInt& n) {
    ++out.tested;
    if ((n - 2) % step != 0) throw std::logic_error("generated n is not 2 mod 2b^12");
    HpcWitness w = is_hpc(n, a, b, sign);
    if (!w.verdict) throw std::logic_error("generated n " + to_decimal(n) + " failed the direct check: " + w.reason);
    out.accepted.push_back(std::move(w));
  };
  if (N == 0) {
    for (long j = 1; j <= options.count; ++j) {
      BigInt n = 2 + step * j;
      if (n > limit) break;
      emit(n);
    }
    out.note = "D = (2n-1)^2 for every n; n = 2 + 2b^12 j";
    return out;
  }
  if (isqrt_exact(d).is_square) {
    for (const BigInt& n : square_discriminant_values(a, b, limit))
      if ((n - 2) % step == 0) emit(n);
    out.note = "2a(b-a) is a perfect square, so only finitely many n have D square";
    return out;
  }
  PellSolution unit = pell_fundamental(d);
  std::vector<std::pair<std::uint64_t, unsigned>> modulus{{2, 2}};
  for (auto [q, k] : factor_small(small_denominator(b))) {
    if (q == 2)
      modulus[0].second += 12 * k;
    else
      modulus.emplace_back(q, 12 * k);
  }
  const BigInt order = unit_order_mod(d, unit.r, unit.s, modulus);
  const double log_unit = std::log10(unit.r.get_d() + std::sqrt(d.get_d()) * unit.s.get_d());
  const double first_digits = order.get_d() * log_unit;
  out.note = "unit power " + to_decimal(order) + " is 1 mod 4b^12";
  if (first_digits > static_cast<double>(options.max_digits)) {
    out.note += "; the first generated n has about " + std::to_string(static_cast<long>(first_digits)) +
                " digits, above the cap of " + std::to_string(options.max_digits);
    return out;
  }
  const QuadPair lift = pow_exact(d, {unit.r, unit.s}, order);
  BigInt t = 2 * b, u = 3;
  for (long j = 1; j <= options.count; ++j) {
    quadratic_multiply(d, t, u, lift.first, lift.second);
    BigInt n = (u + 1) / 2;
    if (n > limit) break;
    emit(n);
  }
  return out;
}

CountPrediction predicted_count_proportional(const GraphFamily& family, const ProblemContext& ctx) {
  FactorMap map(family, ctx);
  std::vector<BigRational> zero(family.size(), 0);
  if (!is_permissible(map, zero))
    throw NotPermissibleError("the all-zero tuple is not permissible at n = " + std::to_string(ctx.n) +
                              ", p = " + ctx.p_string() + ": some x_H at g = 0 is not an integer");
  double log_prob = 0;
  long sum_v = 0, sum_e = 0;
  for (const SmallGraph& h : family.members) {
    log_prob += 0.5 * std::log(static_cast<double>(h.aut_count()));
    sum_v += h.vertex_count();
    sum_e += h.edge_count();
  }
  const double k = static_cast<double>(family.size());
  log_prob -= 0.5 * k * std::log(2 * std::numbers::pi);
  log_prob -= 0.5 * static_cast<double>(sum_v) * std::log(static_cast<double>(ctx.n));
  log_prob -= 0.5 * static_cast<double>(sum_e) * std::log(ctx.q().get_d());
  CountPrediction out;
  out.probability = std::exp(log_prob);
  out.log10_probability = log_prob / std::log(10.0);
  static const SmallGraph k2 = alias("K2");
  if (family.index_of(k2) >= 0) {
    const BigInt pairs = binom(BigInt(ctx.n), 2);
    BigRational edges = ctx.p * BigRational(pairs);
    const BigInt e = edges.get_num();
    out.edges = e;
    const double log_weight =
        e.get_d() * std::log(ctx.p.get_d()) + BigInt(pairs - e).get_d() * std::log(BigRational(1 - ctx.p).get_d());
    out.log10_count = (log_prob - log_weight) / std::log(10.0);
    out.count = std::exp(log_prob - log_weight);
  }
  return out;
}

}  // namespace sgf
