#ifndef MOD1_VAUGHAN_HPP
#define MOD1_VAUGHAN_HPP

// Vaughan's identity in coefficient form.  For n > V,
//
//   Lambda(n) =   sum_{m l = n, m <= U}  mu(m) log l
//              -  sum_{m l = n, m <= UV} c(m)
//              -  sum_{m l = n, m > U, l > V} atilde(m) Lambda(l),
//
// with c(m) = sum_{ab = m, a <= U, b <= V} mu(a) Lambda(b) and
// atilde(m) = sum_{d | m, d <= U} mu(d).  Summed against any test function g
// over n in (max(U,V), x] this reproduces sum Lambda(n) g(n) exactly; the
// tests treat that identity as the module's oracle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "mod1/arithmetic_functions.hpp"
#include "mod1/errors.hpp"
#include "mod1/prime_table.hpp"

namespace mod1 {

struct VaughanDecomposition {
  double x = 0, U = 0, V = 0, W = 0;  // W = max(U, V)
  std::vector<double> mu_small;  // mu(m), index m <= floor(U)
  std::vector<double> c_mid;     // c(m), index m <= floor(UV)
  std::vector<double> a_tilde;   // atilde(m), index m <= floor(x/V)
};

inline VaughanDecomposition vaughan_decompose(double x, double U, double V,
                                              const PrimeTable& table) {
  require(U >= 2 && V >= 2, "vaughan_decompose: need U, V >= 2");
  require(U * V <= x, "vaughan_decompose: need UV <= x");
  require_budget(x <= 1e8, "vaughan_decompose: x over budget");
  VaughanDecomposition d;
  d.x = x;
  d.U = U;
  d.V = V;
  d.W = std::fmax(U, V);
  std::uint64_t u = static_cast<std::uint64_t>(U);
  std::uint64_t uv = static_cast<std::uint64_t>(U * V);
  std::uint64_t xv = static_cast<std::uint64_t>(x / V);

  d.mu_small.assign(u + 1, 0.0);
  for (std::uint64_t m = 1; m <= u; ++m)
    d.mu_small[m] = static_cast<double>(factor_count(m, table).mu);

  // c by sieving: every prime power b <= V against every a <= U.
  d.c_mid.assign(uv + 1, 0.0);
  for (std::uint64_t b = 2; static_cast<double>(b) <= V; ++b) {
    double lam_b = von_mangoldt(b, table);
    if (lam_b == 0) continue;
    for (std::uint64_t a = 1; a <= u && a * b <= uv; ++a)
      if (d.mu_small[a] != 0) d.c_mid[a * b] += d.mu_small[a] * lam_b;
  }

  d.a_tilde.assign(xv + 1, 0.0);
  for (std::uint64_t dd = 1; dd <= u && dd <= xv; ++dd) {
    if (d.mu_small[dd] == 0) continue;
    for (std::uint64_t m = dd; m <= xv; m += dd) d.a_tilde[m] += d.mu_small[dd];
  }
  return d;
}

struct VaughanComponents {
  std::complex<double> type_Ia{0, 0};
  std::complex<double> type_Ib{0, 0};
  std::complex<double> type_II{0, 0};
  std::complex<double> total{0, 0};
};

// The three component sums against g, each over the product range
// W < m*l <= x.  g takes the integer n = m*l.
template <class G>
VaughanComponents eval_vaughan_components(const VaughanDecomposition& d, G&& g,
                                          const PrimeTable& table) {
  VaughanComponents out;
  std::uint64_t x = static_cast<std::uint64_t>(d.x);
  std::uint64_t W = static_cast<std::uint64_t>(d.W);

  for (std::uint64_t m = 1; m < d.mu_small.size(); ++m) {
    if (d.mu_small[m] == 0) continue;
    std::complex<double> inner{0, 0};
    for (std::uint64_t l = W / m + 1; m * l <= x; ++l)
      inner += std::log(static_cast<double>(l)) * g(m * l);
    out.type_Ia += d.mu_small[m] * inner;
  }

  for (std::uint64_t m = 1; m < d.c_mid.size(); ++m) {
    if (d.c_mid[m] == 0) continue;
    std::complex<double> inner{0, 0};
    for (std::uint64_t l = W / m + 1; m * l <= x; ++l) inner += g(m * l);
    out.type_Ib -= d.c_mid[m] * inner;
  }

  std::uint64_t u = static_cast<std::uint64_t>(d.U);
  std::uint64_t v = static_cast<std::uint64_t>(d.V);
  for (std::uint64_t m = u + 1; m < d.a_tilde.size(); ++m) {
    if (d.a_tilde[m] == 0) continue;
    std::complex<double> inner{0, 0};
    std::uint64_t l_lo = std::max(v, W / m) + 1;
    for (std::uint64_t l = l_lo; m * l <= x; ++l) {
      double lam = von_mangoldt(l, table);
      if (lam != 0) inner += lam * g(m * l);
    }
    out.type_II -= d.a_tilde[m] * inner;
  }

  out.total = out.type_Ia + out.type_Ib + out.type_II;
  return out;
}

// The target the components must reproduce: sum over W < n <= x of Lambda(n) g(n).
template <class G>
std::complex<double> vaughan_direct_sum(const VaughanDecomposition& d, G&& g,
                                        const PrimeTable& table) {
  std::complex<double> s{0, 0};
  std::uint64_t x = static_cast<std::uint64_t>(d.x);
  for (std::uint64_t n = static_cast<std::uint64_t>(d.W) + 1; n <= x; ++n) {
    double lam = von_mangoldt(n, table);
    if (lam != 0) s += lam * g(n);
  }
  return s;
}

// Coefficient size checks: |c(m)| <= log m and |atilde(m)| <= tau(m).
inline bool vaughan_coefficient_bounds_ok(const VaughanDecomposition& d, std::uint64_t m_max,
                                          const PrimeTable& table) {
  for (std::uint64_t m = 2; m <= m_max && m < d.c_mid.size(); ++m)
    if (std::abs(d.c_mid[m]) > std::log(static_cast<double>(m)) * (1 + 1e-12)) return false;
  for (std::uint64_t m = 1; m <= m_max && m < d.a_tilde.size(); ++m)
    if (std::abs(d.a_tilde[m]) > static_cast<double>(tau(m, table)) + 1e-9) return false;
  return true;
}

}  // namespace mod1

#endif
