#ifndef MOD1_EXPSUM_HPP
#define MOD1_EXPSUM_HPP

// Exponential sums over progressions and the tau-weighted min-sums, plus the
// weighted double sum W itself.  All phases are exact mod-1 products of the
// represented alpha, so closed-form geometric evaluation stays accurate even
// near resonances; floating point only enters at e(.) and the final adds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "mod1/arithmetic_functions.hpp"
#include "mod1/errors.hpp"
#include "mod1/fixed_real.hpp"
#include "mod1/parallel.hpp"
#include "mod1/prime_table.hpp"
#include "mod1/rosser.hpp"

namespace mod1 {

struct ProgressionSum {
  std::complex<double> value{0, 0};
  std::uint64_t terms = 0;
  bool closed_form = false;
};

// sum over n <= X, n = a (mod d) of e(alpha n).  Closed geometric form with
// the endpoint phase e(alpha d N) computed as one exact mod-1 product, so no
// precision is lost to repeated powering.  Short or resonant progressions are
// summed term by term with an exact phase increment.
inline ProgressionSum eval_progression_sum(const FixedReal& alpha, std::uint64_t X,
                                           std::uint64_t d, std::uint64_t a) {
  require(X >= 1 && d >= 1 && a < d, "eval_progression_sum: need X,d >= 1, 0 <= a < d");
  ProgressionSum r;
  std::uint64_t first = (a == 0) ? d : a;
  if (first > X) return r;
  std::uint64_t n_terms = (X - first) / d + 1;
  r.terms = n_terms;
  UnitFrac step = frac_mul(alpha, d);
  double dist = dist_nearest_int(step);
  bool exact_resonance = step == UnitFrac{};
  if (exact_resonance) {
    r.value = static_cast<double>(n_terms) * e_of(frac_mul(alpha, first));
    r.closed_form = true;
    return r;
  }
  if (n_terms <= 1000 || dist < 1e-12) {
    require_budget(n_terms <= (1ull << 24), "eval_progression_sum: resonant progression too long");
    UnitFrac t = frac_mul(alpha, first);
    std::complex<double> s{0, 0};
    for (std::uint64_t j = 0; j < n_terms; ++j) {
      s += e_of(t);
      t = add_mod1(t, step);
    }
    r.value = s;
    return r;
  }
  std::complex<double> za = e_of(frac_mul(alpha, first));
  std::complex<double> zN = e_of(mul_mod1(step, n_terms));
  std::complex<double> zd = e_of(step);
  r.value = za * (zN - 1.0) / (zd - 1.0);
  r.closed_form = true;
  return r;
}

struct Lemma3Result {
  double magnitude = 0;
  double bound_count = 0;    // X/d + 1
  double bound_spacing = 0;  // 1/(2 ||alpha d||), inf at exact resonance
  double bound = 0;
  bool pass = false;
};

// |sum| <= min(X/d + 1, 1/(2||alpha d||)): the sharp classical form.  The
// tolerance absorbs the ~1e-14 relative error of the evaluation; the
// inequality itself holds with constant 1.
inline Lemma3Result lemma3_check(const FixedReal& alpha, std::uint64_t X, std::uint64_t d,
                                 std::uint64_t a, double tol = 1e-9) {
  Lemma3Result r;
  r.magnitude = std::abs(eval_progression_sum(alpha, X, d, a).value);
  r.bound_count = static_cast<double>(X) / static_cast<double>(d) + 1;
  double dist = dist_nearest_int(frac_mul(alpha, d));
  r.bound_spacing = dist > 0 ? 1.0 / (2 * dist) : std::numeric_limits<double>::infinity();
  r.bound = std::fmin(r.bound_count, r.bound_spacing);
  r.pass = r.magnitude <= r.bound * (1 + tol) + tol;
  return r;
}

struct Lemma4Result {
  double value = 0;
  double rhs = 0;  // XY (1/q + 1/Y + q/(XY)) log(2Xq)
  double ratio = 0;
  std::uint64_t q = 0;
};

// sum over n <= X of min(XY/n, 1/||alpha n||) against the Lemma 4 shape; q is
// a convergent denominator of alpha supplied by the caller.  The phase walks
// by exact increments, one add per n.
inline Lemma4Result eval_lemma4_sum(const FixedReal& alpha, double X, double Y,
                                    std::uint64_t q) {
  require(X >= 1 && Y >= 1 && q >= 1, "eval_lemma4_sum: need X, Y, q >= 1");
  std::uint64_t n_max = static_cast<std::uint64_t>(X);
  require_budget(n_max <= 200000000ull, "eval_lemma4_sum: X over budget");
  Lemma4Result r;
  r.q = q;
  UnitFrac t{};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    t = add_mod1(t, alpha.fr);
    double dist = dist_nearest_int(t);
    double cap = X * Y / static_cast<double>(n);
    r.value += dist > 0 ? std::fmin(cap, 1.0 / dist) : cap;
  }
  r.rhs = X * Y * (1.0 / q + 1.0 / Y + q / (X * Y)) * std::log(2 * X * q);
  r.ratio = r.value / r.rhs;
  return r;
}

// m ~ M means M/2 <= m < M throughout: lo = ceil(M/2), hi = M - 1.
inline std::uint64_t dyadic_lo(std::uint64_t M) { return (M + 1) / 2; }

// sum over m ~ M, j ~ J of tau_mu(m) tau_zeta(j) min{x/(m^2 j), 1/||alpha m^2 j||}.
inline double eval_lemma5_sum(const FixedReal& alpha, std::uint64_t M, std::uint64_t J,
                              double x, int mu, int zeta, const PrimeTable& t) {
  require(M >= 2 && J >= 2 && mu >= 2 && zeta >= 2, "eval_lemma5_sum: need M,J,mu,zeta >= 2");
  require(static_cast<double>(M) * M * J <= x, "eval_lemma5_sum: need M^2 J <= x");
  require_budget(static_cast<double>(M) * J <= 4e8, "eval_lemma5_sum: M*J over budget");
  double total = 0;
  for (std::uint64_t m = dyadic_lo(M); m < M; ++m) {
    double tm = static_cast<double>(tau_k(m, mu, t));
    double inner = 0;
    for (std::uint64_t j = dyadic_lo(J); j < J; ++j) {
      unsigned __int128 u = static_cast<unsigned __int128>(m) * m * j;
      double dist = dist_nearest_int(frac_mul(alpha, u));
      double cap = x / static_cast<double>(u);
      double v = dist > 0 ? std::fmin(cap, 1.0 / dist) : cap;
      inner += static_cast<double>(tau_k(j, zeta, t)) * v;
    }
    total += tm * inner;
  }
  return total;
}

struct GResult {
  double value = 0;
  double bound9 = 0, bound10 = 0;  // RHS of (9), (10), including the eps factor
  double ratio9 = 0, ratio10 = 0;
  double eps_factor = 0;  // x^eps with eps = log log x / log x, i.e. log x
};

// G = sum over m ~ M, s ~ S, j ~ J of tau-weighted min{x/(m^3 s^2 j), ...}
// under the hypothesis x > M^3 S^2 J, compared against both bound shapes.
inline GResult eval_G(const FixedReal& alpha, std::uint64_t M, std::uint64_t S,
                      std::uint64_t J, double x, int mu, int sigma, int zeta,
                      std::uint64_t q, const PrimeTable& t) {
  require(M >= 2 && S >= 2 && J >= 2, "eval_G: need M,S,J >= 2");
  require(mu >= 2 && sigma >= 2 && zeta >= 2, "eval_G: need mu,sigma,zeta >= 2");
  require(x > static_cast<double>(M) * M * M * S * S * J, "eval_G: need x > M^3 S^2 J");
  require(q >= 1, "eval_G: need q >= 1");
  require_budget(static_cast<double>(M) * S * J <= 4e8, "eval_G: M*S*J over budget");
  GResult r;
  for (std::uint64_t m = dyadic_lo(M); m < M; ++m) {
    double tm = static_cast<double>(tau_k(m, mu, t));
    for (std::uint64_t s = dyadic_lo(S); s < S; ++s) {
      double ts = static_cast<double>(tau_k(s, sigma, t)) * tm;
      for (std::uint64_t j = dyadic_lo(J); j < J; ++j) {
        unsigned __int128 u = static_cast<unsigned __int128>(m) * m * m * s * s * j;
        double dist = dist_nearest_int(frac_mul(alpha, u));
        double cap = x / static_cast<double>(u);
        double v = dist > 0 ? std::fmin(cap, 1.0 / dist) : cap;
        r.value += ts * static_cast<double>(tau_k(j, zeta, t)) * v;
      }
    }
  }
  double Md = static_cast<double>(M), Sd = static_cast<double>(S), Jd = static_cast<double>(J);
  double qd = static_cast<double>(q);
  r.eps_factor = std::log(x);
  r.bound9 = r.eps_factor *
             (Md * Sd * Jd + x / (std::pow(Md, 2.25) * Sd) + x / (Md * Md * std::pow(Sd, 1.125)) +
              x / (Md * Md * Sd * std::pow(qd, 0.125)) +
              std::pow(x, 0.875) * std::pow(qd, 0.125) / (Md * Md * Sd));
  r.bound10 = r.eps_factor *
              (Md * Sd * Jd + x / (std::pow(Md, 2.25) * std::pow(Sd, 0.75)) +
               x / (Md * Md * std::pow(Sd, 0.75) * std::pow(qd, 0.25)) +
               std::pow(x, 0.75) * std::pow(qd, 0.25) / (Md * Md * std::pow(Sd, 0.75)));
  r.ratio9 = r.value / r.bound9;
  r.ratio10 = r.value / r.bound10;
  return r;
}

struct WeightTable {
  double level_D = 1;
  std::unordered_map<std::uint64_t, double> lam;  // d -> lambda(d)

  static WeightTable unit() {
    WeightTable w;
    w.level_D = 1;
    w.lam[1] = 1.0;
    return w;
  }
  static WeightTable from_rosser(const RosserWeightTable& r) {
    WeightTable w;
    w.level_D = static_cast<double>(r.level_D);
    for (auto& [d, wt] : r.wts) w.lam[d] = wt;
    return w;
  }
};

struct CoefficientTable {
  std::uint64_t K = 0;
  bool hermitian = true;                    // c(-k) = conj(c(k))
  std::vector<std::complex<double>> c_pos;  // c(k) at index k-1, k = 1..K
  std::vector<std::complex<double>> c_neg;  // c(-k) at index k-1 when !hermitian

  static CoefficientTable ones(std::uint64_t K) {
    CoefficientTable c;
    c.K = K;
    c.c_pos.assign(K, {1.0, 0.0});
    return c;
  }
  // c(k) from a cosine-series table c[0..K]; entry 0 (the mean) is dropped,
  // the rest are real and even, hence hermitian.
  static CoefficientTable from_fourier(const std::vector<double>& series) {
    require(!series.empty(), "CoefficientTable: empty series");
    CoefficientTable c;
    c.K = series.size() - 1;
    c.c_pos.reserve(c.K);
    for (std::size_t k = 1; k < series.size(); ++k) c.c_pos.push_back({series[k], 0.0});
    return c;
  }
  std::complex<double> at(std::int64_t k) const {
    if (k > 0) return c_pos[static_cast<std::size_t>(k - 1)];
    if (hermitian) return std::conj(c_pos[static_cast<std::size_t>(-k - 1)]);
    return c_neg[static_cast<std::size_t>(-k - 1)];
  }
  double max_abs() const {
    double m = 0;
    for (auto& v : c_pos) m = std::fmax(m, std::abs(v));
    if (!hermitian)
      for (auto& v : c_neg) m = std::fmax(m, std::abs(v));
    return m;
  }
};

namespace detail {

// sum over 0 < |k| <= K of c(k) e(k t), with the k-phases as exact multiples
// of the 192-bit t.
inline std::complex<double> coefficient_sum(const CoefficientTable& c, const UnitFrac& t) {
  std::complex<double> s{0, 0};
  for (std::uint64_t k = 1; k <= c.K; ++k) {
    std::complex<double> z = e_of(mul_mod1(t, k));
    std::complex<double> ck = c.c_pos[k - 1];
    if (c.hermitian) {
      s += 2.0 * (ck.real() * z.real() - ck.imag() * z.imag());
    } else {
      s += ck * z + c.c_neg[k - 1] * std::conj(z);
    }
  }
  return s;
}

// sum of lambda(d) over d | m with d <= D, by divisor enumeration.
inline double divisor_weight_sum(std::uint64_t m, const WeightTable& w, const PrimeTable& t) {
  auto f = factor(m, t);
  std::vector<std::uint64_t> divs{1};
  for (auto& [p, e] : f) {
    std::size_t old = divs.size();
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
    }
  }
  double s = 0;
  for (std::uint64_t d : divs) {
    if (static_cast<double>(d) > w.level_D) continue;
    auto it = w.lam.find(d);
    if (it != w.lam.end()) s += it->second;
  }
  return s;
}

}  // namespace detail

// W = sum over d <= D of lambda(d) sum over 0 < |k| <= K of c(k)
//     sum over n ~ x, n = b (mod d) of e((alpha n^2 + beta) k) Lambda(n).
// Realized per n: the k-sum is computed once from the exact phase
// t_n = frac(alpha n^2 + beta), then scaled by Lambda(n) and by
// sum of lambda(d) over d | n - b.  The prime table must cover x + |b|.
inline std::complex<double> eval_W_direct(double x, const WeightTable& weights,
                                          const CoefficientTable& coeffs, std::int64_t b,
                                          const FixedReal& alpha, const FixedReal& beta,
                                          const PrimeTable& table) {
  require(x >= 16, "eval_W_direct: x too small");
  std::uint64_t lo = static_cast<std::uint64_t>(x / 2);
  std::uint64_t hi = static_cast<std::uint64_t>(x);
  if (static_cast<double>(lo) < x / 2) ++lo;
  require(b < static_cast<std::int64_t>(lo), "eval_W_direct: b must be below x/2");
  require_budget(x * static_cast<double>(coeffs.K ? coeffs.K : 1) <= 2e12,
                 "eval_W_direct: x*K over budget");
  if (coeffs.K == 0) return {0, 0};

  auto per_chunk = [&](std::uint64_t a, std::uint64_t c) {
    std::complex<double> s{0, 0};
    for (std::uint64_t n = a; n < c; ++n) {
      double lam_n = von_mangoldt(n, table);
      if (lam_n == 0) continue;
      std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::int64_t>(n) - b);
      double wsum = detail::divisor_weight_sum(m, weights, table);
      if (wsum == 0) continue;
      UnitFrac t = add_mod1(frac_mul(alpha, static_cast<unsigned __int128>(n) * n), beta.fr);
      s += lam_n * wsum * detail::coefficient_sum(coeffs, t);
    }
    return s;
  };
  return chunked_reduce<std::complex<double>>(
      lo, hi, 1 << 14, {0, 0}, per_chunk,
      [](std::complex<double> a, std::complex<double> b2) { return a + b2; });
}

// The trivial comparison bound: sum over the same support of
// Lambda(n) * |sum_d| with every |c(k)| counted in full.
inline double eval_W_trivial_bound(double x, const WeightTable& weights,
                                   const CoefficientTable& coeffs, std::int64_t b,
                                   const PrimeTable& table) {
  require(x >= 16, "eval_W_trivial_bound: x too small");
  std::uint64_t lo = static_cast<std::uint64_t>(x / 2);
  std::uint64_t hi = static_cast<std::uint64_t>(x);
  if (static_cast<double>(lo) < x / 2) ++lo;
  double csum = 0;
  for (std::uint64_t k = 1; k <= coeffs.K; ++k)
    csum += std::abs(coeffs.at(static_cast<std::int64_t>(k))) +
            std::abs(coeffs.at(-static_cast<std::int64_t>(k)));
  auto per_chunk = [&](std::uint64_t a, std::uint64_t c) {
    double s = 0;
    for (std::uint64_t n = a; n < c; ++n) {
      double lam_n = von_mangoldt(n, table);
      if (lam_n == 0) continue;
      std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::int64_t>(n) - b);
      auto f = factor(m, table);
      std::vector<std::uint64_t> divs{1};
      for (auto& [p, e] : f) {
        std::size_t old = divs.size();
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) {
          pe *= p;
          for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
        }
      }
      double wabs = 0;
      for (std::uint64_t d : divs) {
        auto it = weights.lam.find(d);
        if (it != weights.lam.end() && static_cast<double>(d) <= weights.level_D)
          wabs += std::abs(it->second);
      }
      s += lam_n * wabs;
    }
    return s;
  };
  double nsum = chunked_reduce<double>(lo, hi, 1 << 14, 0.0, per_chunk,
                                       [](double a, double b2) { return a + b2; });
  return csum * nsum;
}

}  // namespace mod1

#endif
