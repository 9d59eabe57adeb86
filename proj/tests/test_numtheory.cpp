#include <doctest.h>

#include <random>

#include "sgf/numtheory.hpp"

using namespace sgf;

TEST_CASE("valuation examples") {
  CHECK(valuation(2, BigInt(56)) == 3);
  CHECK(valuation(3, BigInt(81)) == 4);
  CHECK(valuation(5, BigInt(7)) == 0);
  CHECK(valuation(2, BigInt(-12)) == 2);
  CHECK_THROWS_AS(valuation(3, BigInt(0)), std::domain_error);
}

TEST_CASE("valuation shifts by k when multiplying by q^k") {
  std::mt19937_64 rng(7);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 2000; ++trial) {
    std::uint64_t q = primes[rng() % 6];
    unsigned k = rng() % 20;
    BigInt m = static_cast<unsigned long>(rng() % 1000000 + 1);
    BigInt qk;
    mpz_ui_pow_ui(qk.get_mpz_t(), q, k);
    CHECK(valuation(q, qk * m) == k + valuation(q, m));
  }
}

TEST_CASE("binomials") {
  CHECK(binom(BigInt(9), 2) == 36);
  CHECK(binom(BigInt(64), 4) == 635376);
  CHECK(binom(BigInt(12345), 0) == 1);
  CHECK(binom(BigInt(3), 5) == 0);
  BigInt big = parse_bigint("100000000000000000000000000000");
  CHECK(binom(big, 2) == big * (big - 1) / 2);
}

TEST_CASE("isqrt examples") {
  auto r = isqrt_exact(BigInt(1225));
  CHECK(r.root == 35);
  CHECK(r.is_square);
  r = isqrt_exact(BigInt(1176));
  CHECK(r.root == 34);
  CHECK_FALSE(r.is_square);
  r = isqrt_exact(BigInt(0));
  CHECK(r.root == 0);
  CHECK(r.is_square);
}

TEST_CASE("isqrt certificate on random 512-bit inputs") {
  gmp_randclass rand(gmp_randinit_mt);
  rand.seed(12345);
  for (int i = 0; i < 100000; ++i) {
    BigInt m = rand.get_z_bits(512);
    if (i % 3 == 0) m = m * m;  // exercise perfect squares too
    auto r = isqrt_exact(m);
    BigInt ref;
    mpz_sqrt(ref.get_mpz_t(), m.get_mpz_t());
    REQUIRE(r.root == ref);
    REQUIRE(r.root * r.root <= m);
    REQUIRE((r.root + 1) * (r.root + 1) > m);
    REQUIRE(r.is_square == (mpz_perfect_square_p(m.get_mpz_t()) != 0));
  }
}

TEST_CASE("continued fraction periods") {
  auto cf2 = cf_sqrt_period(BigInt(2));
  CHECK(cf2.a0 == 1);
  REQUIRE(cf2.period.size() == 1);
  CHECK(cf2.period[0] == 2);
  auto cf3 = cf_sqrt_period(BigInt(3));
  CHECK(cf3.a0 == 1);
  REQUIRE(cf3.period.size() == 2);
  CHECK(cf3.period[0] == 1);
  CHECK(cf3.period[1] == 2);
  auto cf7 = cf_sqrt_period(BigInt(7));  // [2; (1,1,1,4)]
  CHECK(cf7.period == std::vector<BigInt>{1, 1, 1, 4});
  CHECK_THROWS_AS(cf_sqrt_period(BigInt(9)), std::domain_error);
}

TEST_CASE("rational parsing and field axioms") {
  CHECK(to_fraction_string(parse_rational("2/4")) == "1/2");
  CHECK(to_fraction_string(parse_rational("-3")) == "-3/1");
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_bigint("12a"));

  std::mt19937_64 rng(99);
  auto draw = [&] {
    long num = static_cast<long>(rng() % 2001) - 1000;
    long den = static_cast<long>(rng() % 999) + 1;
    BigRational q(num, den);
    q.canonicalize();
    return q;
  };
  for (int i = 0; i < 1000; ++i) {
    BigRational x = draw(), y = draw(), z = draw();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(gcd(x.get_num(), x.get_den()) == 1);
    CHECK(x.get_den() > 0);
    if (x != 0) CHECK(x * (1 / x) == 1);
  }
  CHECK(pow(BigRational(2, 3), 3) == BigRational(8, 27));
  CHECK(pow(BigRational(2, 3), -2) == BigRational(9, 4));
}
