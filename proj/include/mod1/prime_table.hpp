#ifndef MOD1_PRIME_TABLE_HPP
#define MOD1_PRIME_TABLE_HPP

// Segmented odd-only sieve with an optional smallest-prime-factor table.
// The bitset holds one bit per odd number (set = composite); segments are
// sized for cache residency.  SPF is the workhorse for factoring the shifted
// primes p+2 at desk scale.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mod1/errors.hpp"

namespace mod1 {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t x = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (x > 0 && x > n / x) --x;
  while ((x + 1) <= n / (x + 1)) ++x;
  return x;
}

class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit, bool want_spf = false) : limit_(limit) {
    require(limit >= 2, "PrimeTable: limit must be >= 2");
    require_budget(limit <= (std::uint64_t{1} << 32),
                   "PrimeTable: materialized table capped at 2^32; use segmented_primes");
    build_bits();
    if (want_spf) build_spf();
  }

  std::uint64_t limit() const { return limit_; }
  bool has_spf() const { return !spf_.empty(); }

  bool is_prime(std::uint64_t n) const {
    if (n < 2 || n > limit_) return false;
    if (n == 2) return true;
    if ((n & 1) == 0) return false;
    return !test_bit(n >> 1);
  }

  // f(p) for every prime p in [lo, hi)
  template <class F>
  void for_each_prime(std::uint64_t lo, std::uint64_t hi, F f) const {
    if (hi > limit_ + 1) hi = limit_ + 1;
    if (lo < 2) lo = 2;
    if (lo <= 2 && 2 < hi) f(std::uint64_t{2});
    std::uint64_t n = lo | 1;
    if (n < 3) n = 3;
    for (; n < hi; n += 2)
      if (!test_bit(n >> 1)) f(n);
  }

  std::uint64_t count_primes(std::uint64_t hi) const {
    std::uint64_t c = 0;
    for_each_prime(2, hi + 1, [&](std::uint64_t) { ++c; });
    return c;
  }

  std::vector<std::uint64_t> primes_upto(std::uint64_t n) const {
    std::vector<std::uint64_t> v;
    for_each_prime(2, n + 1, [&](std::uint64_t p) { v.push_back(p); });
    return v;
  }

  // smallest prime factor; spf(1) = 1
  std::uint32_t spf(std::uint64_t n) const {
    require(has_spf() && n <= limit_ && n >= 1, "spf: out of table range");
    return spf_[n];
  }

 private:
  void build_bits() {
    std::uint64_t half = (limit_ >> 1) + 1;  // index i represents 2i+1
    bits_.assign((half + 63) / 64, 0);
    set_bit(0);  // 1 is not prime
    std::uint64_t root = isqrt_u64(limit_);
    // base odd primes to sqrt(limit), found in the same array as it fills
    for (std::uint64_t p = 3; p <= root; p += 2) {
      if (test_bit(p >> 1)) continue;
      for (std::uint64_t m = p * p; m <= limit_; m += 2 * p) set_bit(m >> 1);
    }
  }

  void build_spf() {
    require_budget(limit_ <= 200'000'000, "spf table capped at 2e8");
    spf_.assign(limit_ + 1, 0);
    spf_[1] = 1;
    for (std::uint64_t n = 2; n <= limit_; n += 2) spf_[n] = 2;
    for (std::uint64_t p = 3; p * p <= limit_; p += 2) {
      if (spf_[p] != 0) continue;
      for (std::uint64_t m = p * p; m <= limit_; m += 2 * p)
        if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(p);
    }
    for (std::uint64_t n = 3; n <= limit_; n += 2)
      if (spf_[n] == 0) spf_[n] = static_cast<std::uint32_t>(n);
  }

  void set_bit(std::uint64_t i) { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test_bit(std::uint64_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }

  std::uint64_t limit_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> spf_;
};

// Streaming segmented sieve over [lo, hi), no materialized table.
// Covers ranges up to 2^40 with memory bounded by the segment size.
template <class F>
inline void segmented_primes(std::uint64_t lo, std::uint64_t hi, F f) {
  require_budget(hi <= (std::uint64_t{1} << 40), "segmented_primes: range capped at 2^40");
  if (hi <= lo) return;
  std::uint64_t root = isqrt_u64(hi - 1);
  PrimeTable base(root < 2 ? 2 : root);
  std::vector<std::uint64_t> bp = base.primes_upto(root);
  if (lo <= 2 && 2 < hi) f(std::uint64_t{2});
  constexpr std::uint64_t kSeg = std::uint64_t{1} << 20;  // odd slots per segment
  std::uint64_t start = (lo < 3 ? 3 : (lo | 1));
  std::vector<std::uint64_t> seg;
  for (std::uint64_t s = start; s < hi; s += 2 * kSeg) {
    std::uint64_t e = s + 2 * kSeg < hi ? s + 2 * kSeg : hi;  // odds in [s, e)
    std::uint64_t slots = (e - s + 1) / 2;
    seg.assign((slots + 63) / 64, 0);
    for (std::uint64_t p : bp) {
      if (p == 2) continue;
      if (p * p >= e) break;
      std::uint64_t m = p * p;
      if (m < s) {
        std::uint64_t k = (s - m + 2 * p - 1) / (2 * p);
        m += 2 * p * k;
      }
      for (; m < e; m += 2 * p) {
        std::uint64_t i = (m - s) >> 1;
        seg[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
    for (std::uint64_t i = 0; i < slots; ++i) {
      if (!((seg[i >> 6] >> (i & 63)) & 1)) {
        std::uint64_t n = s + 2 * i;
        if (n >= 3) f(n);
      }
    }
  }
}

}  // namespace mod1

#endif
