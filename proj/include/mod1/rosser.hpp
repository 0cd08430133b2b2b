#ifndef MOD1_ROSSER_HPP
#define MOD1_ROSSER_HPP

// Rosser weights for the linear sieve (beta = 2).  The upper table supports
// squarefree d = p1...pr <= D with z > p1 > ... > pr and
//   p1...p_{l-1} p_l^3 <= D  for every odd l   (upper, parity +1)
//   p1...p_{l-1} p_l^3 <= D  for every even l  (lower, parity -1),
// with weight mu(d).  For every n, sum_{d|n} lambda^-(d) <= [gcd(n, P) = 1]
// <= sum_{d|n} lambda^+(d), P the product of the sieving primes below z.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "mod1/errors.hpp"

namespace mod1 {

struct RosserWeightTable {
  double level_D = 0;
  double z = 0;
  int parity = +1;  // +1 upper, -1 lower
  std::vector<std::uint64_t> sieving_primes;        // ascending, all < z
  std::vector<std::pair<std::uint64_t, int>> wts;   // (d, mu(d)), sorted by d
};

namespace detail {

inline void rosser_dfs(const std::vector<std::uint64_t>& desc, std::size_t start,
                       std::uint64_t d, int level, double D, int parity,
                       std::vector<std::pair<std::uint64_t, int>>& out) {
  for (std::size_t i = start; i < desc.size(); ++i) {
    std::uint64_t p = desc[i];
    if (static_cast<double>(d) * p > D) continue;  // support lives below D
    bool checked_level = (parity == +1) ? (level % 2 == 1) : (level % 2 == 0);
    if (checked_level) {
      double cube = static_cast<double>(d) * p * p * p;
      if (cube > D) continue;
    }
    std::uint64_t nd = d * p;
    out.emplace_back(nd, level % 2 == 1 ? -1 : +1);
    rosser_dfs(desc, i + 1, nd, level + 1, D, parity, out);
  }
}

}  // namespace detail

// sieving_primes: the primes to sift by (must all be < z, ascending).
inline RosserWeightTable rosser_weights(double D, double z, int parity,
                                        std::vector<std::uint64_t> sieving_primes) {
  require(parity == +1 || parity == -1, "rosser_weights: parity must be +-1");
  require(D >= 2 && z >= 2, "rosser_weights: need D >= 2 and z >= 2");
  for (std::uint64_t p : sieving_primes)
    require(static_cast<double>(p) < z, "rosser_weights: sieving prime >= z");
  RosserWeightTable t;
  t.level_D = D;
  t.z = z;
  t.parity = parity;
  t.sieving_primes = sieving_primes;
  std::vector<std::uint64_t> desc(sieving_primes.rbegin(), sieving_primes.rend());
  t.wts.emplace_back(1, +1);
  detail::rosser_dfs(desc, 0, 1, 1, D, parity, t.wts);
  std::sort(t.wts.begin(), t.wts.end());
  return t;
}

struct SandwichViolation {
  std::uint64_t n = 0;
  double lo = 0, hi = 0;
  int indicator = 0;
};

// Checks sum_{d|n} lambda-(d) <= [n coprime to all sieving primes] <=
// sum_{d|n} lambda+(d) for all n <= n_max; returns the violations (empty on
// success).  Both tables must share the sieving prime set.
inline std::vector<SandwichViolation> sandwich_check(const RosserWeightTable& lower,
                                                     const RosserWeightTable& upper,
                                                     std::uint64_t n_max) {
  require(lower.parity == -1 && upper.parity == +1, "sandwich_check: table parities");
  require(lower.sieving_primes == upper.sieving_primes, "sandwich_check: prime sets differ");
  std::vector<int> lo(n_max + 1, 0), hi(n_max + 1, 0);
  for (auto& [d, w] : lower.wts)
    for (std::uint64_t m = d; m <= n_max; m += d) lo[m] += w;
  for (auto& [d, w] : upper.wts)
    for (std::uint64_t m = d; m <= n_max; m += d) hi[m] += w;
  std::vector<char> sifted(n_max + 1, 0);
  for (std::uint64_t p : lower.sieving_primes)
    for (std::uint64_t m = p; m <= n_max; m += p) sifted[m] = 1;
  std::vector<SandwichViolation> bad;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    int ind = sifted[n] ? 0 : 1;
    if (!(lo[n] <= ind && ind <= hi[n]))
      bad.push_back({n, static_cast<double>(lo[n]), static_cast<double>(hi[n]), ind});
  }
  return bad;
}

struct SeparableSplit {
  bool ok = false;
  std::uint64_t h = 1, s = 1;
  std::vector<std::uint64_t> factors;  // decreasing primes of d, for diagnostics
};

// Greedy well-separable split: walk the decreasing prime factorization of d,
// packing into h while h*p <= H, else into s; succeeds iff s <= S at the end.
inline SeparableSplit well_separable_split(std::uint64_t d,
                                           const std::vector<std::uint64_t>& decreasing_primes,
                                           double H, double S) {
  SeparableSplit r;
  r.factors = decreasing_primes;
  for (std::uint64_t p : decreasing_primes) {
    if (static_cast<double>(r.h) * p <= H)
      r.h *= p;
    else
      r.s *= p;
  }
  std::uint64_t check = 1;
  for (std::uint64_t p : decreasing_primes) check *= p;
  require(check == d, "well_separable_split: factorization does not multiply to d");
  r.ok = static_cast<double>(r.s) <= S;
  return r;
}

inline std::string rosser_csv(const RosserWeightTable& t) {
  std::string out = "d,weight,parity\n";
  char buf[64];
  for (auto& [d, w] : t.wts) {
    std::snprintf(buf, sizeof buf, "%llu,%d,%d\n", static_cast<unsigned long long>(d), w,
                  t.parity);
    out += buf;
  }
  return out;
}

}  // namespace mod1

#endif
