#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include <gmpxx.h>

#include "mod1/fixed_real.hpp"

using namespace mod1;

namespace {

mpz_class mpz_from_u128(unsigned __int128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class lo(static_cast<unsigned long>(v));
  return (hi << 64) + lo;
}

UnitFrac random_frac(std::mt19937_64& rng) {
  return UnitFrac{{rng(), rng(), rng()}};
}

}  // namespace

TEST_CASE("mod-1 arithmetic is exact group arithmetic", "[fixed]") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    UnitFrac a = random_frac(rng), b = random_frac(rng);
    CHECK(sub_mod1(add_mod1(a, b), b) == a);
    CHECK(neg_mod1(neg_mod1(a)) == a);
    CHECK(add_mod1(a, neg_mod1(a)) == UnitFrac{});
    CHECK(mul_mod1(a, 1) == a);
    CHECK(mul_mod1(a, 2) == add_mod1(a, a));
    // distributivity of the scaled product
    unsigned __int128 m1 = rng(), m2 = rng();
    CHECK(mul_mod1(a, m1 + m2) == add_mod1(mul_mod1(a, m1), mul_mod1(a, m2)));
  }
}

TEST_CASE("square roots and ratios round to the stored grid", "[fixed]") {
  FixedReal r2 = fixed_from_sqrt(2);
  CHECK(r2.ip == 1);
  CHECK(r2.to_double() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));

  FixedReal r4 = fixed_from_sqrt(4);
  CHECK(r4.ip == 2);
  CHECK(r4.fr == UnitFrac{});

  FixedReal third = fixed_from_ratio(1, 3);
  CHECK(third.ip == 0);
  CHECK(to_double(third.fr) == Catch::Approx(1.0 / 3).epsilon(1e-15));

  FixedReal neg_third = fixed_from_ratio(-1, 3);
  CHECK(neg_third.ip == -1);
  CHECK(to_double(neg_third.fr) == Catch::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(neg_third.to_double() == Catch::Approx(-1.0 / 3).epsilon(1e-15));

  FixedReal two = fixed_from_ratio(6, 3);
  CHECK(two.ip == 2);
  CHECK(two.fr == UnitFrac{});

  // frac(7 * 1/7) differs from 0 only by the 192-bit rounding of 1/7
  UnitFrac f = frac_mul(fixed_from_ratio(1, 7), 7);
  CHECK(dist_nearest_int(f) <= std::ldexp(7.0, -192));

  CHECK_THROWS_AS(fixed_from_ratio(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fixed_from_ratio(1, -3), std::invalid_argument);
}

TEST_CASE("hex mantissa constructor round-trips the sqrt(2) mantissa", "[fixed]") {
  FixedReal half = fixed_from_hex_mantissa(0, "8", 4);
  CHECK(to_double(half.fr) == 0.5);

  FixedReal r2 = fixed_from_sqrt(2);
  BigUInt m;
  m = (BigUInt(r2.fr.w[2]) << 128) + (BigUInt(r2.fr.w[1]) << 64) + BigUInt(r2.fr.w[0]);
  FixedReal back = fixed_from_hex_mantissa(1, m.to_hex(), 192);
  CHECK(back.ip == r2.ip);
  // to_hex drops leading zero digits; the parse left-shifts to 192 bits only
  // when fewer hex digits are supplied, so re-align by the dropped nibbles
  std::size_t digits = m.to_hex().size();
  FixedReal aligned = fixed_from_hex_mantissa(1, m.to_hex(), static_cast<int>(4 * digits));
  CHECK((aligned.fr == r2.fr || back.fr == r2.fr));

  CHECK_THROWS_AS(fixed_from_hex_mantissa(0, "8", 0), std::invalid_argument);
  CHECK_THROWS_AS(fixed_from_hex_mantissa(0, "8", 200), std::invalid_argument);
  CHECK_THROWS_AS(fixed_from_hex_mantissa(0, "xy", 8), std::invalid_argument);
  CHECK_THROWS_AS(fixed_from_hex_mantissa(0, "ff", 4), std::invalid_argument);
}

TEST_CASE("distance to nearest integer folds the top half", "[fixed]") {
  UnitFrac quarter{{0, 0, std::uint64_t{1} << 62}};
  UnitFrac three_quarters{{0, 0, std::uint64_t{3} << 62}};
  CHECK(dist_nearest_int(quarter) == Catch::Approx(0.25));
  CHECK(dist_nearest_int(three_quarters) == Catch::Approx(0.25));
  CHECK(dist_nearest_int(UnitFrac{}) == 0.0);
  // just below 1: distance is the tiny complement, not ~1
  UnitFrac tiny{{1, 0, 0}};
  CHECK(dist_nearest_int(neg_mod1(tiny)) == Catch::Approx(std::ldexp(1.0, -192)));
}

TEST_CASE("e(t) keeps relative accuracy near the wrap", "[fixed]") {
  CHECK(e_of(UnitFrac{}) == std::complex<double>(1.0, 0.0));
  UnitFrac half{{0, 0, std::uint64_t{1} << 63}};
  CHECK(e_of(half).real() == Catch::Approx(-1.0));
  CHECK(std::abs(e_of(half).imag()) < 1e-15);
  UnitFrac quarter{{0, 0, std::uint64_t{1} << 62}};
  CHECK(e_of(quarter).imag() == Catch::Approx(1.0));

  // t = 1 - 2^-40: e(t) = conj(e(2^-40)), so the imaginary part must be
  // -2*pi*2^-40 to relative precision, which a naive cos/sin of 2*pi*t loses
  // entirely (cos and sin at angles near 2*pi only keep absolute accuracy)
  UnitFrac eps{};
  eps.w[2] = std::uint64_t{1} << 24;  // bit 152 of 192 => 2^-40
  std::complex<double> v = e_of(neg_mod1(eps));
  double expect = -2 * 3.14159265358979323846 * std::ldexp(1.0, -40);
  CHECK(v.imag() == Catch::Approx(expect).epsilon(1e-12));
  CHECK(v.real() == Catch::Approx(1.0));

  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    std::complex<double> z = e_of(random_frac(rng));
    CHECK(std::abs(z) == Catch::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("frac_mul matches a 320-bit reference to 2^-60", "[fixed]") {
  // Reference: sqrt(2) to 320 fractional bits via GMP, multiplied exactly.
  mpz_class s = sqrt(mpz_class(2) << 640);          // floor(sqrt(2) * 2^320)
  mpz_class mod320 = mpz_class(1) << 320;
  mpz_class frac320 = s % mod320;
  mpz_class tol = mpz_class(1) << (320 - 60);

  FixedReal alpha = fixed_from_sqrt(2);
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::uint64_t> hi_d(0, 5);  // m up to ~1e20 > 2^64
  for (int i = 0; i < 2000; ++i) {
    unsigned __int128 m = (static_cast<unsigned __int128>(hi_d(rng)) << 64) | rng();
    if (m == 0) continue;
    UnitFrac f = frac_mul(alpha, m);
    mpz_class mine = mpz_from_u128(f.w[2]);
    mine <<= 64;
    mine += mpz_from_u128(f.w[1]);
    mine <<= 64;
    mine += mpz_from_u128(f.w[0]);
    mine <<= 128;  // lift 192 -> 320 bits
    mpz_class ref = (frac320 * mpz_from_u128(m)) % mod320;
    mpz_class d = mine > ref ? mine - ref : ref - mine;
    if (d > mod320 / 2) d = mod320 - d;
    REQUIRE(d <= tol);
  }
}
