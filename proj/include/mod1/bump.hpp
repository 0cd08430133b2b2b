#ifndef MOD1_BUMP_HPP
#define MOD1_BUMP_HPP

// Periodized bump: chi = h * (indicator[-d2, d2] convolved r times with the
// uniform density of width w), with
//   r  = ceil(log x),       h  = 2r/(2r+1),
//   d2 = delta(2r+1)/(4r),  w  = delta(2r-1)/(2r^2).
// Then d2 + r*w/2 = delta exactly (support is (-delta, delta) mod 1) and
// c(0) = h * 2 * d2 = delta exactly.  Because c(0) = delta and h < 1 force
// d2 > delta/2 > r*w/2, the kernel is narrower than the plateau: chi attains
// the value h exactly on [-delta/(2r), delta/(2r)] and is < 1 everywhere.
// Fourier coefficients are real, even, and in closed form:
//   c(k) = h * sin(2 pi k d2)/(pi k) * (sin(pi k w)/(pi k w))^r.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "mod1/errors.hpp"

namespace mod1 {

struct BumpSpec {
  double delta = 0;
  double x = 0;
  int r = 0;
  double h_scale = 0;
  double delta2 = 0;
  double w = 0;
  long long cutoff_K = 0;     // K = delta^-1 log^2 x
  std::vector<double> c;      // c[k], k = 0..cutoff_K; c(-k) = c(k)
};

inline double bump_coefficient(const BumpSpec& s, long long k) {
  if (k == 0) return s.delta;
  double kk = static_cast<double>(k < 0 ? -k : k);
  const double pi = 3.14159265358979323846264338328;
  double box = std::sin(2.0 * pi * kk * s.delta2) / (pi * kk);
  double u = pi * kk * s.w;
  double kern = std::pow(std::sin(u) / u, s.r);
  return s.h_scale * box * kern;
}

inline BumpSpec build_bump(double delta, double x) {
  require(delta > 0 && delta < 0.5, "build_bump: delta must be in (0, 1/2)");
  require(x >= 3, "build_bump: x must be >= 3");
  BumpSpec s;
  s.delta = delta;
  s.x = x;
  s.r = static_cast<int>(std::ceil(std::log(x)));
  double r = static_cast<double>(s.r);
  s.h_scale = 2.0 * r / (2.0 * r + 1.0);
  s.delta2 = delta * (2.0 * r + 1.0) / (4.0 * r);
  s.w = delta * (2.0 * r - 1.0) / (2.0 * r * r);
  double lx = std::log(x);
  s.cutoff_K = static_cast<long long>(std::floor(lx * lx / delta));
  require_budget(s.cutoff_K <= 50'000'000, "build_bump: coefficient table too large");
  s.c.resize(static_cast<std::size_t>(s.cutoff_K) + 1);
  s.c[0] = delta;
  for (long long k = 1; k <= s.cutoff_K; ++k)
    s.c[static_cast<std::size_t>(k)] = bump_coefficient(s, k);
  return s;
}

namespace detail {

// Irwin-Hall CDF: S = sum of r iid uniform(0,1); F(t) = sum over j <= floor(t)
// of (-1)^j C(r,j) (t-j)^r / r!.  Long double keeps the alternating sum honest
// through r ~ 25.
inline long double irwin_hall_cdf(long double t, int r) {
  if (t <= 0) return 0;
  if (t >= r) return 1;
  long double sum = 0;
  long double binom = 1;  // C(r, j)
  int jmax = static_cast<int>(t);
  for (int j = 0; j <= jmax; ++j) {
    long double term = binom * std::pow(t - j, static_cast<long double>(r));
    sum += (j % 2 == 0) ? term : -term;
    binom = binom * (r - j) / (j + 1);
  }
  for (int i = 2; i <= r; ++i) sum /= i;
  return sum;
}

}  // namespace detail

// Exact evaluation of the periodized chi at t (any real):
// chi(t) = h * (Phi(t+d2) - Phi(t-d2)), Phi the CDF of the centered r-fold
// uniform sum of width w, i.e. a degree-r piecewise polynomial.  Near the
// right edge both CDF arguments sit against 1, so the difference is formed
// from the complementary tail via the exact symmetry F(t) + F(r-t) = 1;
// values ~1e-50 at the support edge then come out positive, not rounded away.
inline double bump_eval_direct(const BumpSpec& s, double t) {
  t -= std::floor(t);
  if (t > 0.5) t -= 1.0;  // reduce to [-1/2, 1/2)
  if (t <= -s.delta || t >= s.delta) return 0.0;
  long double r2 = 0.5L * s.r;
  long double ua = (t + s.delta2) / s.w + r2;
  long double ub = (t - s.delta2) / s.w + r2;
  long double v;
  if (ub >= r2) {
    v = detail::irwin_hall_cdf(s.r - ub, s.r) - detail::irwin_hall_cdf(s.r - ua, s.r);
  } else {
    v = detail::irwin_hall_cdf(ua, s.r) - detail::irwin_hall_cdf(ub, s.r);
  }
  // The CDF difference lies in [0, 1] exactly; the alternating sum can stray
  // by ~1e-13 of cancellation noise near the plateau edge, so pin it back
  // before scaling.  Plateau points keep the exact value h.
  if (v < 0) v = 0;
  if (v > 1) v = 1;
  return static_cast<double>(v * static_cast<long double>(s.h_scale));
}

// Fourier partial sum: delta + sum_{0<k<=cutoff} 2 c(k) cos(2 pi k t).
inline double bump_eval_fourier(const BumpSpec& s, double t, long long cutoff) {
  if (cutoff > s.cutoff_K) cutoff = s.cutoff_K;
  const double two_pi = 6.28318530717958647692528676656;
  double acc = s.c[0];
  for (long long k = 1; k <= cutoff; ++k)
    acc += 2.0 * s.c[static_cast<std::size_t>(k)] * std::cos(two_pi * k * t);
  return acc;
}

// Analytic envelope for the tail sum_{|k|>K} |c(k)| <= 2h/(pi r) (pi w K)^-r,
// from |c(k)| <= h (pi k)^-1 (pi k w)^-r and an integral comparison.
inline double bump_tail_bound(const BumpSpec& s, long long K) {
  require(K >= 1, "bump_tail_bound: K must be >= 1");
  const double pi = 3.14159265358979323846264338328;
  double u = pi * s.w * static_cast<double>(K);
  require(u > 1.0, "bump_tail_bound: envelope needs pi w K > 1");
  return 2.0 * s.h_scale / (pi * s.r) * std::pow(u, -s.r);
}

inline std::string bump_csv(const BumpSpec& s) {
  std::string out = "k,c_k\n";
  char buf[64];
  for (long long k = 0; k <= s.cutoff_K; ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", k, s.c[static_cast<std::size_t>(k)]);
    out += buf;
  }
  return out;
}

}  // namespace mod1

#endif
