#ifndef MOD1_SIEVE_BOUNDS_HPP
#define MOD1_SIEVE_BOUNDS_HPP

// Sifting a weighted sequence: exact scans against Rosser upper/lower weight
// sums, plus the Buchstab four-term decomposition
//   S(A, x^(1/3)) >= S1 - S2/2 - S3/2 - S4
// with S1 = S(A, z), z = x^(1/12), the p1 cut at y = x^(1/3.1), and all inner
// sieving at level z.  Sequences are dense arrays indexed by the element n,
// so |A_d| scans are simple strides.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "mod1/arithmetic_functions.hpp"
#include "mod1/errors.hpp"
#include "mod1/prime_table.hpp"
#include "mod1/rosser.hpp"

namespace mod1 {

struct WeightedSequence {
  std::vector<double> f;  // f[n] = weight of element n (0 when absent)
  std::uint64_t n_max = 0;
};

inline std::vector<char> build_sifted_mask(std::uint64_t n_max,
                                           const std::vector<std::uint64_t>& sieving_primes) {
  std::vector<char> m(n_max + 1, 0);
  for (std::uint64_t p : sieving_primes)
    for (std::uint64_t q = p; q <= n_max; q += p) m[q] = 1;
  return m;
}

struct SieveBounds {
  double lower = 0;  // Rosser lambda^- sum
  double exact = 0;  // direct scan of [gcd(n, P(z)) = 1]
  double upper = 0;  // Rosser lambda^+ sum
  double V_z = 1;    // prod (1 - omega(p)/p)
  double s = 0;      // log D / log z
  double main_lower = 0, main_upper = 0;  // X V(z) f(s), X V(z) F(s)
};

// S(A_stride, z) where A_stride = elements divisible by `stride` (stride must
// be coprime to the sieving primes).  X_scale = 0 skips the main terms.
inline SieveBounds sieve_bounds(const WeightedSequence& seq, std::uint64_t stride,
                                const RosserWeightTable& lower, const RosserWeightTable& upper,
                                const std::vector<char>& sifted_mask, double X_scale = 0,
                                const std::function<double(std::uint64_t)>& omega = nullptr,
                                const std::function<double(double)>& F_of = nullptr,
                                const std::function<double(double)>& f_of = nullptr) {
  SieveBounds b;
  auto weighted_multiples = [&](std::uint64_t d) {
    double s = 0;
    for (std::uint64_t m = d; m <= seq.n_max; m += d) s += seq.f[m];
    return s;
  };
  for (auto& [d, w] : lower.wts) b.lower += w * weighted_multiples(stride * d);
  for (auto& [d, w] : upper.wts) b.upper += w * weighted_multiples(stride * d);
  for (std::uint64_t m = stride; m <= seq.n_max; m += stride)
    if (!sifted_mask[m]) b.exact += seq.f[m];
  if (X_scale > 0 && omega) {
    b.V_z = 1;
    for (std::uint64_t p : lower.sieving_primes)
      b.V_z *= 1.0 - omega(p) / static_cast<double>(p);
    b.s = std::log(lower.level_D) / std::log(lower.z);
    if (f_of) b.main_lower = X_scale * b.V_z * f_of(b.s);
    if (F_of) b.main_upper = X_scale * b.V_z * F_of(b.s);
  }
  return b;
}

struct BuchstabPiece {
  double exact = 0, lower = 0, upper = 0;
};

struct BuchstabTerms {
  double z = 0, y = 0, cbrt_x = 0;
  BuchstabPiece s1, s2, s3, s4;
  double direct_value = 0;     // S1 - S2/2 - S3/2 - S4, exact scans
  double assembled_lower = 0;  // S1.lower - S2.upper/2 - S3.upper/2 - S4.upper
  double target_exact = 0;     // S(A, x^(1/3)) by direct scan
  // What the decomposition provably bounds: Chen weights satisfy
  // w(n) <= [Omega(n) <= 2] pointwise for squarefree sifted n, and w <= 1
  // always, so direct_value <= p2_mass + nonsquarefree_mass.  target_exact
  // misses almost-primes with a factor below x^(1/3), so direct_value can
  // legitimately exceed it.
  double p2_mass = 0;             // sum of f_n over sifted n with Omega(n) <= 2
  double nonsquarefree_mass = 0;  // sum of f_n over sifted n with mu(n) = 0
};

// cfg exponents: z = x^z_exp, y = x^p1_exp.  The sieving set for every piece
// is {p < z : omega(p) > 0}; for the twin sequence that excludes 2.
inline BuchstabTerms buchstab_terms(const WeightedSequence& seq, double x,
                                    const PrimeTable& primes,
                                    const std::vector<std::uint64_t>& sieving_primes,
                                    double level_D, double z_exp = 1.0 / 12,
                                    double p1_exp = 1.0 / 3.1) {
  require(x >= 64 && static_cast<double>(seq.n_max) >= x, "buchstab_terms: bad x");
  require_budget(seq.n_max <= (1ull << 27), "buchstab_terms: sequence too large");
  BuchstabTerms t;
  t.z = std::pow(x, z_exp);
  t.y = std::pow(x, p1_exp);
  t.cbrt_x = std::pow(x, 1.0 / 3);
  for (std::uint64_t p : sieving_primes)
    require(static_cast<double>(p) < t.z, "buchstab_terms: sieving prime >= z");
  RosserWeightTable lo = rosser_weights(level_D, t.z, -1, sieving_primes);
  RosserWeightTable hi = rosser_weights(level_D, t.z, +1, sieving_primes);
  std::vector<char> mask = build_sifted_mask(seq.n_max, sieving_primes);

  auto piece = [&](std::uint64_t stride) {
    return sieve_bounds(seq, stride, lo, hi, mask);
  };
  auto add = [](BuchstabPiece& acc, const SieveBounds& b) {
    acc.exact += b.exact;
    acc.lower += b.lower;
    acc.upper += b.upper;
  };

  add(t.s1, piece(1));

  std::vector<std::uint64_t> p1_small;  // primes in [z, y)
  primes.for_each_prime(static_cast<std::uint64_t>(std::ceil(t.z)),
                        static_cast<std::uint64_t>(std::ceil(t.y)),
                        [&](std::uint64_t p) { p1_small.push_back(p); });
  for (std::uint64_t p1 : p1_small) add(t.s2, piece(p1));

  for (std::uint64_t p1 : p1_small) {
    double p2_max = std::sqrt(x / static_cast<double>(p1));
    primes.for_each_prime(static_cast<std::uint64_t>(std::ceil(t.y)),
                          static_cast<std::uint64_t>(std::ceil(p2_max)), [&](std::uint64_t p2) {
                            if (static_cast<double>(p2) < p2_max) add(t.s3, piece(p1 * p2));
                          });
  }

  std::vector<std::uint64_t> p1_big;  // primes in [y, x^(1/3))
  primes.for_each_prime(static_cast<std::uint64_t>(std::ceil(t.y)),
                        static_cast<std::uint64_t>(std::ceil(t.cbrt_x)),
                        [&](std::uint64_t p) { p1_big.push_back(p); });
  for (std::uint64_t p1 : p1_big) {
    double p2_max = std::sqrt(x / static_cast<double>(p1));
    primes.for_each_prime(p1 + 1, static_cast<std::uint64_t>(std::ceil(p2_max)),
                          [&](std::uint64_t p2) {
                            if (static_cast<double>(p2) < p2_max) add(t.s4, piece(p1 * p2));
                          });
  }

  t.direct_value = t.s1.exact - 0.5 * t.s2.exact - 0.5 * t.s3.exact - t.s4.exact;
  t.assembled_lower = t.s1.lower - 0.5 * t.s2.upper - 0.5 * t.s3.upper - t.s4.upper;

  // the target S(A, x^(1/3)): same sequence sifted by all primes < x^(1/3)
  // with the same omega support convention (2 excluded iff excluded above)
  std::vector<std::uint64_t> big_set;
  bool skip_two = true;
  for (std::uint64_t p : sieving_primes)
    if (p == 2) skip_two = false;
  primes.for_each_prime(2, static_cast<std::uint64_t>(std::ceil(t.cbrt_x)),
                        [&](std::uint64_t p) {
                          if (p == 2 && skip_two) return;
                          big_set.push_back(p);
                        });
  std::vector<char> big_mask = build_sifted_mask(seq.n_max, big_set);
  for (std::uint64_t n = 1; n <= seq.n_max; ++n)
    if (!big_mask[n]) t.target_exact += seq.f[n];

  for (std::uint64_t n = 2; n <= seq.n_max; ++n) {
    if (seq.f[n] == 0 || mask[n]) continue;
    FactorCount fc = factor_count(n, primes);
    if (fc.big_omega <= 2) t.p2_mass += seq.f[n];
    if (fc.mu == 0) t.nonsquarefree_mass += seq.f[n];
  }
  return t;
}

}  // namespace mod1

#endif
