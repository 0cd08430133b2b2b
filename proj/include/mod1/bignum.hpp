#ifndef MOD1_BIGNUM_HPP
#define MOD1_BIGNUM_HPP

// Minimal unsigned multiword integer, enough for exact fixed-point plumbing:
// sqrt extraction, continued-fraction Euclid steps, and exactness checks on
// numbers a few hundred bits wide.  Little-endian 64-bit limbs, normalized.

#include <cstdint>
#include <string>
#include <vector>

namespace mod1 {

class BigUInt {
 public:
  BigUInt() = default;
  BigUInt(std::uint64_t v) {
    if (v) limbs_.push_back(v);
  }
  static BigUInt from_u128(unsigned __int128 v) {
    BigUInt r;
    r.limbs_.push_back(static_cast<std::uint64_t>(v));
    r.limbs_.push_back(static_cast<std::uint64_t>(v >> 64));
    r.trim();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  std::size_t limb_count() const { return limbs_.size(); }
  std::uint64_t limb(std::size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }

  std::size_t bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t top = 64 - static_cast<std::size_t>(__builtin_clzll(limbs_.back()));
    return (limbs_.size() - 1) * 64 + top;
  }

  bool bit(std::size_t i) const {
    std::size_t w = i / 64;
    return w < limbs_.size() && ((limbs_[w] >> (i % 64)) & 1u);
  }

  unsigned __int128 to_u128() const {
    unsigned __int128 v = limb(1);
    return (v << 64) | limb(0);
  }

  static int cmp(const BigUInt& a, const BigUInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
  }
  friend bool operator<(const BigUInt& a, const BigUInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) <= 0; }
  friend bool operator==(const BigUInt& a, const BigUInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) != 0; }

  friend BigUInt operator+(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    r.limbs_.resize(n, 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned __int128 s = carry + a.limb(i) + b.limb(i);
      r.limbs_[i] = static_cast<std::uint64_t>(s);
      carry = s >> 64;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint64_t>(carry));
    return r;
  }

  // requires a >= b
  friend BigUInt operator-(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    r.limbs_.resize(a.limbs_.size(), 0);
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      unsigned __int128 d = static_cast<unsigned __int128>(a.limb(i)) - b.limb(i) - borrow;
      r.limbs_[i] = static_cast<std::uint64_t>(d);
      borrow = (d >> 64) ? 1 : 0;
    }
    r.trim();
    return r;
  }

  friend BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    if (a.is_zero() || b.is_zero()) return BigUInt();
    BigUInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      unsigned __int128 carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        unsigned __int128 cur = carry + r.limbs_[i + j] +
                                static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j];
        r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<std::uint64_t>(carry);
    }
    r.trim();
    return r;
  }

  BigUInt operator<<(std::size_t bits) const {
    if (is_zero()) return BigUInt();
    std::size_t words = bits / 64, rem = bits % 64;
    BigUInt r;
    r.limbs_.assign(limbs_.size() + words + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      r.limbs_[i + words] |= rem ? (limbs_[i] << rem) : limbs_[i];
      if (rem) r.limbs_[i + words + 1] |= limbs_[i] >> (64 - rem);
    }
    r.trim();
    return r;
  }

  BigUInt operator>>(std::size_t bits) const {
    std::size_t words = bits / 64, rem = bits % 64;
    if (words >= limbs_.size()) return BigUInt();
    BigUInt r;
    r.limbs_.assign(limbs_.size() - words, 0);
    for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
      r.limbs_[i] = limbs_[i + words] >> rem;
      if (rem && i + words + 1 < limbs_.size())
        r.limbs_[i] |= limbs_[i + words + 1] << (64 - rem);
    }
    r.trim();
    return r;
  }

  // Schoolbook binary long division; fine at the few-hundred-bit widths used here.
  static void divmod(const BigUInt& a, const BigUInt& b, BigUInt& q, BigUInt& r) {
    q = BigUInt();
    r = BigUInt();
    if (b.is_zero() || a < b) {
      r = a;
      return;
    }
    std::size_t shift = a.bit_length() - b.bit_length();
    BigUInt d = b << shift;
    r = a;
    q.limbs_.assign(shift / 64 + 1, 0);
    for (std::size_t i = shift + 1; i-- > 0;) {
      if (d <= r) {
        r = r - d;
        q.limbs_[i / 64] |= (std::uint64_t{1} << (i % 64));
      }
      d = d >> 1;
      if (i == 0) break;
    }
    q.trim();
  }

  // floor(sqrt(n)) by Newton iteration on integers.
  static BigUInt isqrt(const BigUInt& n) {
    if (n.is_zero()) return BigUInt();
    BigUInt x = BigUInt(1) << ((n.bit_length() + 1) / 2);
    for (;;) {
      BigUInt q, r;
      divmod(n, x, q, r);
      BigUInt nx = (x + q) >> 1;
      if (cmp(nx, x) >= 0) break;
      x = nx;
    }
    // x = floor(sqrt(n)) iff x^2 <= n < (x+1)^2
    while (n < x * x) x = x - BigUInt(1);
    return x;
  }

  std::string to_hex() const {
    if (is_zero()) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      for (int sh = 60; sh >= 0; sh -= 4) s.push_back(digits[(limbs_[i] >> sh) & 0xf]);
    }
    std::size_t nz = s.find_first_not_of('0');
    return s.substr(nz);
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint64_t> limbs_;
};

}  // namespace mod1

#endif
