#ifndef MOD1_CONTINUED_FRACTION_HPP
#define MOD1_CONTINUED_FRACTION_HPP

// Continued-fraction convergents of a fixed-point real, by exact integer
// Euclid on (ip*2^192 + mantissa, 2^192).  Digits stop at the precision guard
// q^2 < 2^(192-8): beyond that the convergents of the representation are not
// trustworthy as convergents of the represented irrational.

#include <cstdint>
#include <optional>
#include <vector>

#include "mod1/bignum.hpp"
#include "mod1/errors.hpp"
#include "mod1/fixed_real.hpp"

namespace mod1 {

struct Convergent {
  long long a = 0;  // numerator
  long long q = 1;  // denominator, positive
};

namespace detail {

// Emits CF digits a0, a1, ... of alpha until `emit` returns false or the
// digit stream ends (rational at working precision) or a digit overflows.
template <class Emit>
inline void cf_digits(const FixedReal& alpha, Emit emit) {
  require(alpha.ip >= 0, "convergents: alpha must be nonnegative");
  if (!emit(static_cast<unsigned long long>(alpha.ip))) return;
  BigUInt u = BigUInt(1) << kFracBits;
  BigUInt v;
  {
    BigUInt m;
    m = BigUInt(alpha.fr.w[2]);
    m = (m << 64) + BigUInt(alpha.fr.w[1]);
    m = (m << 64) + BigUInt(alpha.fr.w[0]);
    v = m;
  }
  while (!v.is_zero()) {
    BigUInt q, r;
    BigUInt::divmod(u, v, q, r);
    if (q.bit_length() > 62) return;  // absurd digit: representation artifact
    if (!emit(q.limb(0))) return;
    u = v;
    v = r;
  }
}

}  // namespace detail

// Exact check of |alpha*q - a| * q < 1 for the fixed-point alpha.
inline bool convergent_quality_ok(const FixedReal& alpha, const Convergent& c) {
  if (c.q <= 0 || c.a < 0) return false;
  BigUInt p = (BigUInt(static_cast<std::uint64_t>(alpha.ip)) << kFracBits);
  BigUInt m = BigUInt(alpha.fr.w[2]);
  m = (m << 64) + BigUInt(alpha.fr.w[1]);
  m = (m << 64) + BigUInt(alpha.fr.w[0]);
  p = p + m;
  BigUInt lhs = p * BigUInt(static_cast<std::uint64_t>(c.q));
  BigUInt rhs = BigUInt(static_cast<std::uint64_t>(c.a)) << kFracBits;
  BigUInt err = lhs < rhs ? rhs - lhs : lhs - rhs;
  return err * BigUInt(static_cast<std::uint64_t>(c.q)) < (BigUInt(1) << kFracBits);
}

inline std::vector<Convergent> convergents(const FixedReal& alpha, int count) {
  require(count >= 1, "convergents: count must be >= 1");
  std::vector<Convergent> out;
  __int128 h1 = 1, h2 = 0;            // h_{j-1}, h_{j-2}
  unsigned __int128 k1 = 0, k2 = 1;   // k_{j-1}, k_{j-2}
  const unsigned __int128 kQGuard = static_cast<unsigned __int128>(1) << ((kFracBits - 8) / 2);
  const unsigned __int128 kI64 = static_cast<unsigned __int128>(INT64_MAX);
  detail::cf_digits(alpha, [&](unsigned long long d) {
    unsigned __int128 dd = d;
    __int128 h = static_cast<__int128>(dd) * h1 + h2;
    unsigned __int128 k = dd * k1 + k2;
    if (k >= kQGuard) return false;  // precision guard: q^2 >= 2^(F-8)
    if (k > kI64 || h > static_cast<__int128>(kI64) || h < 0) return false;
    out.push_back(Convergent{static_cast<long long>(h), static_cast<long long>(k)});
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    return out.size() < static_cast<std::size_t>(count);
  });
  return out;
}

// Largest convergent denominator strictly inside (q_min, q_max).
inline std::optional<Convergent> select_denominator(const FixedReal& alpha, long long q_min,
                                                    long long q_max) {
  require(q_min >= 0 && q_max > q_min, "select_denominator: need 0 <= q_min < q_max");
  std::optional<Convergent> best;
  __int128 h1 = 1, h2 = 0;
  unsigned __int128 k1 = 0, k2 = 1;
  const unsigned __int128 kQGuard = static_cast<unsigned __int128>(1) << ((kFracBits - 8) / 2);
  detail::cf_digits(alpha, [&](unsigned long long d) {
    unsigned __int128 dd = d;
    __int128 h = static_cast<__int128>(dd) * h1 + h2;
    unsigned __int128 k = dd * k1 + k2;
    if (k >= kQGuard) return false;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    if (k > static_cast<unsigned __int128>(INT64_MAX)) return false;
    long long q = static_cast<long long>(k);
    if (q >= q_max) return false;
    if (q > q_min && h >= 0 && h <= static_cast<__int128>(INT64_MAX))
      best = Convergent{static_cast<long long>(h), q};
    return true;
  });
  return best;
}

}  // namespace mod1

#endif
