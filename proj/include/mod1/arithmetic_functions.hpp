#ifndef MOD1_ARITHMETIC_FUNCTIONS_HPP
#define MOD1_ARITHMETIC_FUNCTIONS_HPP

// Multiplicative bookkeeping on top of PrimeTable: factorizations, Omega/omega,
// mu, phi, von Mangoldt, and the generalized divisor functions tau_k.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mod1/errors.hpp"
#include "mod1/prime_table.hpp"

namespace mod1 {

struct FactorCount {
  std::uint64_t n = 0;
  int big_omega = 0;    // Omega: prime factors with multiplicity
  int small_omega = 0;  // omega: distinct prime factors
  int mu = 0;           // Moebius
  std::uint64_t phi = 1;
};

// Full factorization.  Uses the SPF table when it covers n, else trial
// division by sieved primes up to sqrt(n) (requires table limit >= sqrt(n)).
inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n, const PrimeTable& t) {
  require(n >= 1, "factor: n must be >= 1");
  std::vector<std::pair<std::uint64_t, int>> f;
  if (t.has_spf() && n <= t.limit()) {
    while (n > 1) {
      std::uint64_t p = t.spf(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
    return f;
  }
  std::uint64_t root = isqrt_u64(n);
  require(t.limit() >= root, "factor: prime table too small for trial division");
  std::uint64_t rem = n;
  t.for_each_prime(2, root + 1, [&](std::uint64_t p) {
    if (p * p > rem || rem == 1) return;
    if (rem % p == 0) {
      int e = 0;
      while (rem % p == 0) {
        rem /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  });
  if (rem > 1) f.emplace_back(rem, 1);
  return f;
}

inline FactorCount factor_count(std::uint64_t n, const PrimeTable& t) {
  FactorCount c;
  c.n = n;
  auto f = factor(n, t);
  c.small_omega = static_cast<int>(f.size());
  c.mu = 1;
  c.phi = 1;
  for (auto& [p, e] : f) {
    c.big_omega += e;
    if (e > 1) c.mu = 0;
    std::uint64_t pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    c.phi *= pe * (p - 1);
  }
  if (c.mu != 0) c.mu = (c.small_omega % 2 == 0) ? 1 : -1;
  if (n == 1) c.mu = 1;
  return c;
}

// Omega(n) <= r
inline bool is_almost_prime(std::uint64_t n, int r, const PrimeTable& t) {
  require(r >= 1, "is_almost_prime: r must be >= 1");
  return factor_count(n, t).big_omega <= r;
}

// log p on prime powers, 0 elsewhere
inline double von_mangoldt(std::uint64_t n, const PrimeTable& t) {
  if (n < 2) return 0.0;
  auto f = factor(n, t);
  if (f.size() != 1) return 0.0;
  return std::log(static_cast<double>(f[0].first));
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetError("tau_k: 64-bit overflow");
  return r;
}

// C(n, k) with overflow checking; exact at every step since the partial
// products are the binomials C(n-k+i, i).
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

// tau_k(n): number of ordered k-tuples with product n; multiplicative with
// tau_k(p^a) = C(a+k-1, k-1).
inline std::uint64_t tau_k(std::uint64_t n, int k, const PrimeTable& t) {
  require(k >= 1, "tau_k: k must be >= 1");
  std::uint64_t r = 1;
  for (auto& [p, e] : factor(n, t))
    r = checked_mul(r, binomial(static_cast<std::uint64_t>(e + k - 1),
                                static_cast<std::uint64_t>(k - 1)));
  return r;
}

inline std::uint64_t tau(std::uint64_t n, const PrimeTable& t) { return tau_k(n, 2, t); }

struct DivisorMoment {
  std::uint64_t x = 0;
  int k = 2;
  double sum = 0;        // sum of tau_k(n), n <= x
  double main_term = 0;  // x log^(k-1) x / (k-1)!
  double ratio = 0;
};

inline DivisorMoment divisor_moment_check(std::uint64_t x, int k, const PrimeTable& t) {
  require(k >= 2, "divisor_moment_check: k must be >= 2");
  require_budget(x <= 10'000'000, "divisor_moment_check: x capped at 1e7");
  DivisorMoment m;
  m.x = x;
  m.k = k;
  double s = 0;
  for (std::uint64_t n = 1; n <= x; ++n) s += static_cast<double>(tau_k(n, k, t));
  m.sum = s;
  double fact = 1;
  for (int i = 2; i < k; ++i) fact *= i;
  m.main_term = static_cast<double>(x) * std::pow(std::log(static_cast<double>(x)), k - 1) / fact;
  m.ratio = m.sum / m.main_term;
  return m;
}

}  // namespace mod1

#endif
