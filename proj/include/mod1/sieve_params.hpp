#ifndef MOD1_SIEVE_PARAMS_HPP
#define MOD1_SIEVE_PARAMS_HPP

// Parameter bookkeeping for the exponential-sum estimate: the admissible
// (theta, rho) region, the derived scales delta, K, Delta, D, the five-term
// bound with its x^eps factor, and the q-window in which the bound beats the
// trivial estimate.  Everything here is plain real arithmetic; sums over the
// actual sequences live elsewhere.  Logs are natural throughout.

#include <cmath>
#include <cstdint>

#include "mod1/errors.hpp"

namespace mod1 {

struct SieveParams {
  double theta = 0, rho = 0, x = 0;
  double delta = 0;  // x^-theta
  double K = 0;      // delta^-1 log^2 x
  double Delta = 0;  // x^rho
  double D = 0;      // sqrt(x) / (Delta K^4)
  bool usable_level = false;      // D >= 1: the weight d = 1 fits under the level
  bool nontrivial_level = false;  // D >= 2: some modulus d > 1 fits
};

// Constraints: 0 < theta < 1/200, rho > 32 theta, rho + 4 theta < 11/54.
// (rho + theta > 0 is implied but checked for symmetry with the source
// inequalities.)  Small D is reported, not rejected: at desk scales D < 1
// always, and the caller decides how to clamp.
inline SieveParams sieve_params(double theta, double rho, double x) {
  require(x >= 16, "sieve_params: x too small");
  require(theta > 0 && theta < 1.0 / 200, "sieve_params: theta outside (0, 1/200)");
  require(rho > 32 * theta, "sieve_params: need rho > 32 theta");
  require(rho + 4 * theta < 11.0 / 54, "sieve_params: need rho + 4 theta < 11/54");
  require(rho + theta > 0, "sieve_params: need rho + theta > 0");
  SieveParams p;
  p.theta = theta;
  p.rho = rho;
  p.x = x;
  double lx = std::log(x);
  p.delta = std::exp(-theta * lx);
  p.K = lx * lx / p.delta;
  p.Delta = std::exp(rho * lx);
  p.D = std::exp(0.5 * lx - rho * lx - 4 * std::log(p.K));
  p.usable_level = p.D >= 1;
  p.nontrivial_level = p.D >= 2;
  return p;
}

struct BoundTerms {
  double log_terms[5] = {0, 0, 0, 0, 0};
  double terms[5] = {0, 0, 0, 0, 0};
  double sum = 0;            // sum of the five terms, no eps factor
  double eps = 0;            // log log x / log x
  double eps_factor = 0;     // x^eps = log x
  double total = 0;          // eps_factor * sum
  double trivial = 0;        // x K
  double ratio_trivial = 0;  // total / trivial
};

// The five-term bound on |W|; computed in log space so that large x stays
// finite.  eps = log log x / log x makes the x^eps factor exactly log x.
inline BoundTerms theorem1_bound(double x, double K, double Delta, double q) {
  require(x >= 16 && K >= 1 && Delta >= 1 && q >= 2, "theorem1_bound: bad inputs");
  BoundTerms b;
  double lx = std::log(x), lK = std::log(K), lD = std::log(Delta), lq = std::log(q);
  b.log_terms[0] = lx + lK - lD / 32;
  b.log_terms[1] = lx + lK - lq / 32;
  b.log_terms[2] = (15.0 / 16) * lx + (31.0 / 32) * lK + lq / 32;
  b.log_terms[3] = lx + lD / 2 + lK - lq / 4;
  b.log_terms[4] = lx / 2 + lD / 2 + (3.0 / 4) * lK + lq / 4;
  for (int i = 0; i < 5; ++i) {
    b.terms[i] = std::exp(b.log_terms[i]);
    b.sum += b.terms[i];
  }
  b.eps = std::log(lx) / lx;
  b.eps_factor = lx;
  b.total = b.eps_factor * b.sum;
  b.trivial = x * K;
  b.ratio_trivial = b.total / b.trivial;
  return b;
}

struct QWindow {
  double log_lo = 0, log_hi = 0;
  double q_lo = 0, q_hi = 0;  // exp of the logs; may overflow to inf
  bool nonempty = false;
};

// Moduli q with max(x^omega, Delta K^2) < q < min(x^2 / K^31, x^2 / (Delta^2 K^3)).
// Under the admissible exponents the lower edge is Delta K^2 once x is large.
// The window is empty for every x a desk can hold; it opens around
// log x ~ 160 and the tests exercise it through the log fields.
inline QWindow remark2_window(double x, double K, double Delta, double omega_exp) {
  require(x >= 16 && K >= 1 && Delta >= 1 && omega_exp > 0, "remark2_window: bad inputs");
  QWindow w;
  double lx = std::log(x), lK = std::log(K), lD = std::log(Delta);
  w.log_lo = std::fmax(omega_exp * lx, lD + 2 * lK);
  w.log_hi = std::fmin(2 * lx - 31 * lK, 2 * lx - 2 * lD - 3 * lK);
  w.q_lo = std::exp(w.log_lo);
  w.q_hi = std::exp(w.log_hi);
  w.nonempty = w.log_lo < w.log_hi;
  return w;
}

struct Lemma1Params {
  double theta = 0, x = 0;
  double K = 0;            // x^theta log^2 x
  double Delta = 0;        // K^delta_exp
  double D = 0;            // sqrt(x) / (Delta K^4)
  bool usable_level = false;
  double threshold_log_x = 0;  // log x at which D crosses 1 (same theta)
  double threshold_x = 0;
};

// Self-dual point x = q with Delta tied to K.  delta_exp defaults to 32.34/33,
// slightly above 32/33 so the Delta-dependent terms still win.  The threshold
// solves L/2 = (delta_exp + 4)(theta L + 2 log L) for L = log x by bisection.
inline Lemma1Params lemma1_params(double theta, double x, double delta_exp = 32.34 / 33) {
  require(theta > 0 && theta < 0.005, "lemma1_params: theta outside (0, 0.005)");
  require(x >= 16, "lemma1_params: x too small");
  require(delta_exp > 0 && delta_exp < 1, "lemma1_params: delta_exp outside (0, 1)");
  Lemma1Params p;
  p.theta = theta;
  p.x = x;
  double lx = std::log(x);
  p.K = std::exp(theta * lx) * lx * lx;
  p.Delta = std::pow(p.K, delta_exp);
  p.D = std::exp(0.5 * lx - (delta_exp + 4) * std::log(p.K));
  p.usable_level = p.D >= 1;
  double c = delta_exp + 4;
  double slope = 0.5 - c * theta;
  require(slope > 0, "lemma1_params: D never reaches 1 for this theta");
  auto g = [&](double L) { return slope * L - 2 * c * std::log(L); };
  double lo = 2, hi = 2;
  while (g(hi) < 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  p.threshold_log_x = 0.5 * (lo + hi);
  p.threshold_x = std::exp(p.threshold_log_x);
  return p;
}

}  // namespace mod1

#endif
