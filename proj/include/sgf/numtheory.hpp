#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sgf {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

/// Parses "a/b" or "a" into a canonical rational. Throws std::invalid_argument.
BigRational parse_rational(std::string_view text);

std::string to_decimal(const BigInt& value);

/// Always "num/den", denominator positive.
std::string to_fraction_string(const BigRational& value);

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

/// nu_q(m): exponent of the prime q in m. Throws std::domain_error for m == 0
/// (the valuation is infinite) or q < 2.
unsigned valuation(const BigInt& q, const BigInt& m);
unsigned valuation(std::uint64_t q, const BigInt& m);

/// Binomial coefficient; zero when n < k.
BigInt binom(const BigInt& n, unsigned long k);

/// n (n-1) ... (n-k+1)
BigInt falling_factorial(const BigInt& n, unsigned long k);

BigInt factorial(unsigned long k);

struct IsqrtResult {
  BigInt root;  // floor(sqrt(m))
  bool is_square = false;
};

/// Integer square root by Newton iteration. The result carries the
/// certificate root^2 <= m < (root+1)^2, which is re-checked before returning.
IsqrtResult isqrt_exact(const BigInt& m);

/// Prime factorization of a machine-size integer by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m);

struct SqrtContinuedFraction {
  BigInt a0;
  std::vector<BigInt> period;
};

/// Periodic expansion sqrt(d) = [a0; (period...)]. Throws std::domain_error
/// when d is a perfect square or d < 2.
SqrtContinuedFraction cf_sqrt_period(const BigInt& d);

BigRational pow(const BigRational& base, long exponent);

}  // namespace sgf
