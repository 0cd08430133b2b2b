#ifndef MOD1_FIXED_REAL_HPP
#define MOD1_FIXED_REAL_HPP

// Fixed-point reals with 192 fractional bits.  The point of this type is that
// frac(alpha * m) is computed exactly for the *represented* alpha: multiplying
// the mantissa by an integer m and keeping the low 192 bits is an exact mod-1
// operation, so the only error against the true irrational is the one-shot
// representation error, amplified linearly: |frac(alpha m) - computed| <=
// m * 2^-192 (+ 2^-192 granularity).  Phases are read off the top 64 bits,
// which costs at most 2^-64 in the angle, well inside the documented 2^-50
// per-term budget for e(.).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mod1/bignum.hpp"

namespace mod1 {

inline constexpr int kFracBits = 192;

struct UnitFrac {
  // value = (w[2]*2^128 + w[1]*2^64 + w[0]) / 2^192, in [0, 1)
  std::array<std::uint64_t, 3> w{0, 0, 0};

  friend bool operator==(const UnitFrac& a, const UnitFrac& b) { return a.w == b.w; }
};

inline UnitFrac add_mod1(const UnitFrac& a, const UnitFrac& b) {
  UnitFrac r;
  unsigned __int128 c = 0;
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 s = c + a.w[i] + b.w[i];
    r.w[i] = static_cast<std::uint64_t>(s);
    c = s >> 64;
  }
  return r;  // carry out = integer part, dropped
}

inline UnitFrac neg_mod1(const UnitFrac& a) {
  UnitFrac r;
  unsigned __int128 c = 1;  // two's complement over 192 bits
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 s = c + static_cast<std::uint64_t>(~a.w[i]);
    r.w[i] = static_cast<std::uint64_t>(s);
    c = s >> 64;
  }
  return r;
}

inline UnitFrac sub_mod1(const UnitFrac& a, const UnitFrac& b) { return add_mod1(a, neg_mod1(b)); }

// frac(a * m) for integer m < 2^128: low 192 bits of the 320-bit product.
inline UnitFrac mul_mod1(const UnitFrac& a, unsigned __int128 m) {
  const std::uint64_t mm[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
  std::uint64_t out[3] = {0, 0, 0};
  unsigned __int128 acc = 0;
  for (int col = 0; col < 3; ++col) {
    unsigned __int128 hi_acc = 0;
    for (int i = 0; i < 3; ++i) {
      int j = col - i;
      if (j < 0 || j > 1) continue;
      unsigned __int128 pr = static_cast<unsigned __int128>(a.w[i]) * mm[j];
      acc += static_cast<std::uint64_t>(pr);
      hi_acc += static_cast<std::uint64_t>(pr >> 64);
    }
    out[col] = static_cast<std::uint64_t>(acc);
    acc = (acc >> 64) + hi_acc;
  }
  return UnitFrac{{out[0], out[1], out[2]}};
}

inline double to_double(const UnitFrac& a) {
  return std::ldexp(static_cast<double>(a.w[2]), -64) +
         std::ldexp(static_cast<double>(a.w[1]), -128) +
         std::ldexp(static_cast<double>(a.w[0]), -192);
}

// ||t|| = distance to the nearest integer, branch decided exactly on the mantissa.
inline double dist_nearest_int(const UnitFrac& t) {
  if (t.w[2] >> 63) {
    UnitFrac n = neg_mod1(t);
    if (n.w == std::array<std::uint64_t, 3>{0, 0, 0}) return 0.0;
    return to_double(n);
  }
  return to_double(t);
}

struct FixedReal {
  long long ip = 0;  // value = ip + fr, fr in [0,1)
  UnitFrac fr{};

  double to_double() const { return static_cast<double>(ip) + mod1::to_double(fr); }
};

// frac(alpha * m): the integer part contributes nothing mod 1.
inline UnitFrac frac_mul(const FixedReal& alpha, unsigned __int128 m) {
  return mul_mod1(alpha.fr, m);
}

inline FixedReal fixed_from_integer(long long v) { return FixedReal{v, UnitFrac{}}; }

// floor(sqrt(d) * 2^192) via integer Newton on d * 2^384; exact for squares.
inline FixedReal fixed_from_sqrt(std::uint64_t d) {
  BigUInt s = BigUInt::isqrt(BigUInt(d) << (2 * kFracBits));
  FixedReal r;
  r.fr.w = {s.limb(0), s.limb(1), s.limb(2)};
  r.ip = static_cast<long long>(s.limb(3));
  return r;
}

// value = num / den rounded to 192 fractional bits; den > 0.
inline FixedReal fixed_from_ratio(long long num, long long den) {
  if (den <= 0) throw std::invalid_argument("fixed_from_ratio: den must be positive");
  bool neg = num < 0;
  unsigned long long an = neg ? -static_cast<unsigned long long>(num) : num;
  BigUInt q, r;
  BigUInt::divmod(BigUInt(an) << kFracBits, BigUInt(static_cast<std::uint64_t>(den)), q, r);
  FixedReal out;
  out.fr.w = {q.limb(0), q.limb(1), q.limb(2)};
  out.ip = static_cast<long long>(q.limb(3));
  if (neg && !(out.ip == 0 && out.fr.w == std::array<std::uint64_t, 3>{0, 0, 0})) {
    // -(ip + fr) = (-ip - 1) + (1 - fr), keeping fr in [0,1)
    if (out.fr.w == std::array<std::uint64_t, 3>{0, 0, 0}) {
      out.ip = -out.ip;
    } else {
      out.fr = neg_mod1(out.fr);
      out.ip = -out.ip - 1;
    }
  }
  return out;
}

// Mantissa given as hex digits of an F-bit fraction, F <= 192.
inline FixedReal fixed_from_hex_mantissa(long long ip, const std::string& hex, int f_bits) {
  if (f_bits <= 0 || f_bits > kFracBits)
    throw std::invalid_argument("fixed_from_hex_mantissa: F must be in (0, 192]");
  BigUInt m;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("fixed_from_hex_mantissa: bad hex digit");
    m = (m << 4) + BigUInt(static_cast<std::uint64_t>(d));
  }
  if (kFracBits - f_bits > 0) m = m << static_cast<std::size_t>(kFracBits - f_bits);
  if (!(m.bit_length() <= static_cast<std::size_t>(kFracBits)))
    throw std::invalid_argument("fixed_from_hex_mantissa: mantissa exceeds F bits");
  FixedReal r;
  r.ip = ip;
  r.fr.w = {m.limb(0), m.limb(1), m.limb(2)};
  return r;
}

// e(t) = exp(2 pi i t); the angle comes from the top bits of the mantissa.
// Reduced to [-1/2, 1/2) first so that phases near 0 mod 1 keep relative
// precision; e(t) - 1 near a resonance is then accurate, not just small.
inline std::complex<double> e_of(const UnitFrac& t) {
  double u = to_double(t);
  if (u >= 0.5) u -= 1.0;
  double a = 6.283185307179586476925286766559 * u;
  return {std::cos(a), std::sin(a)};
}

}  // namespace mod1

#endif
