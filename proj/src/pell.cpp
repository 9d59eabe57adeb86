#include "sgf/pell.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace sgf {

PellSolution pell_fundamental(const BigInt& d) {
  SqrtContinuedFraction cf = cf_sqrt_period(d);
  const std::size_t period = cf.period.size();
  const std::size_t last = period % 2 == 0 ? period - 1 : 2 * period - 1;
  BigInt h_prev = 1, h = cf.a0, k_prev = 0, k = 1;
  for (std::size_t i = 0; i < last; ++i) {
    const BigInt& ai = cf.period[i % period];
    BigInt h_next = ai * h + h_prev, k_next = ai * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  if (h * h - d * k * k != 1) throw std::logic_error("pell_fundamental: convergent is not a solution");
  return PellSolution{d, h, k, 1};
}

void quadratic_multiply(const BigInt& d, BigInt& x, BigInt& y, const BigInt& u, const BigInt& v) {
  BigInt nx = x * u + d * y * v;
  BigInt ny = x * v + y * u;
  x = nx;
  y = ny;
}

std::vector<PellSolution> pell_iterate(const PellSolution& sol, long count) {
  PellSolution unit = pell_fundamental(sol.d);
  std::vector<PellSolution> out;
  out.reserve(static_cast<std::size_t>(count));
  PellSolution cur = sol;
  for (long i = 0; i < count; ++i) {
    quadratic_multiply(cur.d, cur.r, cur.s, unit.r, unit.s);
    ++cur.index;
    out.push_back(cur);
  }
  return out;
}

GeneralizedPellBase generalized_pell_classes(const BigInt& d, const BigInt& N, long max_search) {
  if (N == 0) throw std::invalid_argument("generalized_pell_classes: N must be nonzero");
  GeneralizedPellBase base{d, N, pell_fundamental(d), {}};
  const BigInt& r = base.unit.r;
  const BigInt& s = base.unit.s;
  BigInt absN = abs(N);
  BigInt denom = N > 0 ? BigInt(2 * (r + 1)) : BigInt(2 * (r - 1));
  BigInt bound2 = s * s * absN / denom;
  BigInt upper = isqrt_exact(bound2).root;
  if (upper > max_search)
    throw CapError("generalized Pell search range " + to_decimal(upper) + " exceeds cap " + std::to_string(max_search));
  const long hi = upper.get_si();
  for (long u = 0; u <= hi; ++u) {
    BigInt t2 = d * u * u + N;
    if (t2 < 0) continue;
    IsqrtResult t = isqrt_exact(t2);
    if (!t.is_square) continue;
    base.classes.emplace_back(t.root, BigInt(u));
    if (t.root != 0) base.classes.emplace_back(-t.root, BigInt(u));
  }
  return base;
}

std::vector<HalfCandidate> hpc_half_candidates(long a_max) {
  std::vector<HalfCandidate> out;
  BigInt r = 3, s = 2;
  for (long a = 2; a <= a_max; ++a) {
    quadratic_multiply(2, r, s, 3, 2);
    out.push_back(HalfCandidate{a, (r + 1) / 2});
  }
  return out;
}

const std::string& smallest_hpc_half_reference() {
  static const std::string value =
      "393269643023291698757257685885597325993848383834865007942605471587"
      "76646090803634139011571761644665911164995315856589457844040190274"
      "86900324895339884998922974107837617595976120658101454799784430552"
      "76491318398420535797250926457828227049436167142838296079634563380"
      "03268437259421557766468489165196802438714427492861326293694236836"
      "16897572759524717640627107177163613602416684747964902340756531202";
  return value;
}

BigInt smallest_hpc_half() {
  auto admissible = [](long a) {
    const long m = a % 1024;
    return m == 0 || m == 1 || m == 1023 || m == 511 || m == 513;
  };
  long a = 2;
  while (!admissible(a)) ++a;
  return hpc_half_candidates(a).back().n;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sgf
