#include "sgf/numtheory.hpp"

#include <cctype>
#include <stdexcept>

namespace sgf {

namespace {

bool valid_decimal(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!valid_decimal(text))
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

std::string to_fraction_string(const BigRational& value) {
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

unsigned valuation(const BigInt& q, const BigInt& m) {
  if (q < 2) throw std::domain_error("valuation base must be >= 2");
  if (m == 0) throw std::domain_error("valuation of zero is infinite");
  BigInt rest = abs(m);
  unsigned k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    ++k;
  }
  return k;
}

unsigned valuation(std::uint64_t q, const BigInt& m) {
  if (q == 2) {
    if (m == 0) throw std::domain_error("valuation of zero is infinite");
    return static_cast<unsigned>(mpz_scan1(m.get_mpz_t(), 0));
  }
  return valuation(BigInt(static_cast<unsigned long>(q)), m);
}

BigInt binom(const BigInt& n, unsigned long k) {
  if (n < k) return 0;
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

BigInt falling_factorial(const BigInt& n, unsigned long k) {
  BigInt r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= n - i;
  return r;
}

BigInt factorial(unsigned long k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

IsqrtResult isqrt_exact(const BigInt& m) {
  if (m < 0) throw std::domain_error("isqrt of a negative number");
  IsqrtResult out;
  if (m < 2) {
    out.root = m;
    out.is_square = true;
    return out;
  }
  // Start above the root; Newton's iterates then decrease monotonically.
  std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  BigInt x = BigInt(1) << static_cast<mp_bitcnt_t>((bits + 1) / 2 + 1);
  while (true) {
    BigInt y = (x + m / x) >> 1;
    if (y >= x) break;
    x = std::move(y);
  }
  if (!(x * x <= m && (x + 1) * (x + 1) > m))
    throw std::logic_error("isqrt certificate failed");
  out.root = x;
  out.is_square = (x * x == m);
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    unsigned k = 0;
    while (m % q == 0) {
      m /= q;
      ++k;
    }
    out.emplace_back(q, k);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

SqrtContinuedFraction cf_sqrt_period(const BigInt& d) {
  if (d < 2) throw std::domain_error("continued fraction of sqrt(d) needs d >= 2");
  IsqrtResult r = isqrt_exact(d);
  if (r.is_square) throw std::domain_error("d is a perfect square: " + to_decimal(d));
  SqrtContinuedFraction cf;
  cf.a0 = r.root;
  // Standard recurrence m' = d_k a_k - m, d' = (d - m'^2) / d_k, a' = (a0 + m') / d'.
  BigInt m = 0, den = 1, a = cf.a0;
  do {
    m = den * a - m;
    den = (d - m * m) / den;
    a = (cf.a0 + m) / den;
    cf.period.push_back(a);
  } while (a != 2 * cf.a0);
  return cf;
}

BigRational pow(const BigRational& base, long exponent) {
  BigRational result = 1;
  BigRational b = base;
  if (exponent < 0) {
    if (b == 0) throw std::domain_error("zero to a negative power");
    b = 1 / b;
    exponent = -exponent;
  }
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace sgf
