#ifndef MOD1_SIEVE_FUNCTIONS_HPP
#define MOD1_SIEVE_FUNCTIONS_HPP

// Linear-sieve functions F, f: F(s) = 2 e^gamma / s and f(s) = 0 on (0, 2],
// continued by the delay system (sF(s))' = f(s-1), (sf(s))' = F(s-1) for
// s > 2.  The products P = sF, p = sf are marched with the trapezoid rule on
// a grid whose step divides 1 exactly, so the delayed arguments and the kink
// points at integer s land on grid nodes.  Closed forms on the first
// intervals: P = 2e^gamma on (0,3], p = 2e^gamma log(s-1) on [2,4].

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mod1/errors.hpp"

namespace mod1 {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct SieveFunctionTable {
  double step = 0;
  double s_max = 0;
  int per_unit = 0;            // grid points per unit interval
  std::vector<double> bigP;    // P[i] = s_i F(s_i), s_i = i * step
  std::vector<double> smallp;  // p[i] = s_i f(s_i)

  double F_of(double s) const {
    require(s > 0 && s <= s_max, "F_of: s out of range");
    return interp(bigP, s) / s;
  }
  double f_of(double s) const {
    require(s > 0 && s <= s_max, "f_of: s out of range");
    return interp(smallp, s) / s;
  }

 private:
  double interp(const std::vector<double>& v, double s) const {
    double u = s / step;
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= v.size()) return v.back();
    double frac = u - static_cast<double>(i);
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
  }
};

// per_unit: grid points per unit of s (default 4000 holds the f(4) error
// near 4e-8, well under the 1e-6 gate).
inline SieveFunctionTable sieve_functions(double s_max, int per_unit = 4000) {
  require(s_max >= 2 && s_max <= 64, "sieve_functions: s_max must be in [2, 64]");
  require(per_unit >= 10 && per_unit <= 1'000'000, "sieve_functions: bad step");
  SieveFunctionTable t;
  t.per_unit = per_unit;
  t.step = 1.0 / per_unit;
  std::size_t n = static_cast<std::size_t>(std::llround(s_max * per_unit));
  t.s_max = static_cast<double>(n) * t.step;
  t.bigP.assign(n + 1, 0.0);
  t.smallp.assign(n + 1, 0.0);
  const double two_eg = 2.0 * std::exp(kEulerGamma);
  std::size_t two = static_cast<std::size_t>(2 * per_unit);
  for (std::size_t i = 0; i <= two && i <= n; ++i) {
    t.bigP[i] = two_eg;
    t.smallp[i] = 0.0;
  }
  const double h = t.step;
  auto g1 = [&](std::size_t i) {  // f(s-1) = p(s-1)/(s-1)
    double s1 = static_cast<double>(i) * h - 1.0;
    return t.smallp[i - per_unit] / s1;
  };
  auto g2 = [&](std::size_t i) {  // F(s-1) = P(s-1)/(s-1)
    double s1 = static_cast<double>(i) * h - 1.0;
    return t.bigP[i - per_unit] / s1;
  };
  for (std::size_t i = two + 1; i <= n; ++i) {
    t.bigP[i] = t.bigP[i - 1] + 0.5 * h * (g1(i - 1) + g1(i));
    t.smallp[i] = t.smallp[i - 1] + 0.5 * h * (g2(i - 1) + g2(i));
  }
  return t;
}

inline std::string sieve_functions_csv(const SieveFunctionTable& t, int stride = 1) {
  std::string out = "s,F,f\n";
  char buf[96];
  std::size_t n = t.bigP.size() - 1;
  for (std::size_t i = stride; i <= n; i += stride) {
    double s = static_cast<double>(i) * t.step;
    std::snprintf(buf, sizeof buf, "%.6f,%.17g,%.17g\n", s, t.bigP[i] / s, t.smallp[i] / s);
    out += buf;
  }
  return out;
}

}  // namespace mod1

#endif
