#pragma once

#include <string>
#include <vector>

#include "sgf/numtheory.hpp"

namespace sgf {

/// r^2 - d s^2 = 1 with (r + s sqrt d) = (fundamental unit)^index.
struct PellSolution {
  BigInt d, r, s;
  long index = 1;
};

/// Minimal positive solution from the continued fraction of sqrt(d).
/// Throws std::domain_error when d < 2 or d is a perfect square.
PellSolution pell_fundamental(const BigInt& d);

/// The next `count` powers of the fundamental unit after `sol`, which must be
/// a power of the fundamental solution for sol.d.
std::vector<PellSolution> pell_iterate(const PellSolution& sol, long count);

/// (x + y sqrt d)(u + v sqrt d).
void quadratic_multiply(const BigInt& d, BigInt& x, BigInt& y, const BigInt& u, const BigInt& v);

/// Solutions (T, U) of T^2 - d U^2 = N, one representative per class, with
/// U in the classical bound range. Throws CapError when that range exceeds
/// `max_search`.
struct GeneralizedPellBase {
  BigInt d, N;
  PellSolution unit;
  std::vector<std::pair<BigInt, BigInt>> classes;  // (T, U) with U >= 0
};
GeneralizedPellBase generalized_pell_classes(const BigInt& d, const BigInt& N, long max_search = 10'000'000);

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HalfCandidate {
  long a = 0;
  BigInt n;  // ((1+sqrt2)^a + (1+sqrt2)^-a)^2 / 4 = (r_a + 1) / 2
};

/// n(a) for 2 <= a <= a_max via r_a + s_a sqrt 2 = (3 + 2 sqrt 2)^a.
std::vector<HalfCandidate> hpc_half_candidates(long a_max);

/// The embedded 391-digit reference value.
const std::string& smallest_hpc_half_reference();

/// n(511), the least candidate whose index is 0, +-1, +-511 mod 1024.
BigInt smallest_hpc_half();

/// 64-bit FNV-1a of a string, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace sgf
