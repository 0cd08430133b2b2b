#ifndef MOD1_EXPERIMENT_HPP
#define MOD1_EXPERIMENT_HPP

// The end-to-end pipeline: weighted twin-type sequence, remainder terms
// against the expected main terms, the four-piece Buchstab decomposition with
// Rosser bounds per piece, the direct count of qualifying primes, and a
// serializable report.  Conventions: the sequence lives on n = p + 2 for odd
// primes p <= x - 2; p = 2 appears in direct counts only; sieving is by odd
// primes (omega(2) = 0); progressions mod d are p = -2 (mod d).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "mod1/arithmetic_functions.hpp"
#include "mod1/bump.hpp"
#include "mod1/errors.hpp"
#include "mod1/expsum.hpp"
#include "mod1/fixed_real.hpp"
#include "mod1/log_integral.hpp"
#include "mod1/parallel.hpp"
#include "mod1/prime_table.hpp"
#include "mod1/rosser.hpp"
#include "mod1/sieve_bounds.hpp"

namespace mod1 {

struct ExperimentConfig {
  FixedReal alpha, beta;
  std::string alpha_desc = "sqrt:2";
  std::string beta_desc = "int:0";
  double x = 1e6;
  double theta = 0.3;
  double delta = 0.01;  // bump half-width; the scale-derived x^-theta exceeds
                        // 1/2 at desk scale, so delta is set directly
  double z_exp = 1.0 / 12;
  double p1_exp = 1.0 / 3.1;
  double level_D = 100;        // Rosser level for the bound pieces and d-statistics
  std::uint64_t q = 0;         // convergent denominator, informational
  std::uint64_t r2_k_cap = 2000;  // truncation of the k-sum in the r2 diagnostics
  bool theorem_regime = false;    // asserts theta < 1/1296
};

struct GoodPrimeWitness {
  std::uint64_t p = 0;
  int omega = 0;  // Omega(p + 2)
  double dist = 0;
  double threshold = 0;  // p^-theta
};

struct GoodPrimeCount {
  std::uint64_t count = 0;
  std::vector<GoodPrimeWitness> witnesses;  // smallest qualifying p, capped at 100
};

// Primes p <= x with Omega(p+2) <= 2 and ||alpha p^2 + beta|| < p^-theta.
inline GoodPrimeCount count_good_primes(const ExperimentConfig& cfg, const PrimeTable& table) {
  require(cfg.x >= 4, "count_good_primes: x too small");
  require_budget(cfg.x <= 1e9, "count_good_primes: x over budget");
  require(cfg.theta >= 0 && cfg.theta < 1, "count_good_primes: theta must lie in [0, 1)");
  require(static_cast<double>(table.limit()) >= cfg.x + 2, "count_good_primes: table too small");
  if (cfg.theorem_regime) require(cfg.theta < 1.0 / 1296, "count_good_primes: regime flag needs theta < 1/1296");
  std::uint64_t x = static_cast<std::uint64_t>(cfg.x);
  struct Acc {
    std::uint64_t count = 0;
    std::vector<GoodPrimeWitness> wit;
  };
  auto per_chunk = [&](std::uint64_t a, std::uint64_t b) {
    Acc acc;
    for (std::uint64_t n = a; n < b; ++n) {
      if (!table.is_prime(n)) continue;
      if (factor_count(n + 2, table).big_omega > 2) continue;
      double thr = std::pow(static_cast<double>(n), -cfg.theta);
      double dist = dist_nearest_int(
          add_mod1(frac_mul(cfg.alpha, static_cast<unsigned __int128>(n) * n), cfg.beta.fr));
      if (dist < thr) {
        ++acc.count;
        if (acc.wit.size() < 100)
          acc.wit.push_back({n, factor_count(n + 2, table).big_omega, dist, thr});
      }
    }
    return acc;
  };
  Acc total = chunked_reduce<Acc>(2, x + 1, 1 << 16, Acc{}, per_chunk, [](Acc a, Acc b) {
    a.count += b.count;
    for (auto& w : b.wit)
      if (a.wit.size() < 100) a.wit.push_back(w);
    return a;
  });
  return {total.count, std::move(total.wit)};
}

// Equidistribution calibration: sum over primes p <= x with Omega(p+2) <= 2
// of min(1, 2 p^-theta), the measure of the target interval per prime.
inline double expected_count(const ExperimentConfig& cfg, const PrimeTable& table) {
  require(static_cast<double>(table.limit()) >= cfg.x + 2, "expected_count: table too small");
  std::uint64_t x = static_cast<std::uint64_t>(cfg.x);
  auto per_chunk = [&](std::uint64_t a, std::uint64_t b) {
    double s = 0;
    for (std::uint64_t n = a; n < b; ++n) {
      if (!table.is_prime(n)) continue;
      if (factor_count(n + 2, table).big_omega > 2) continue;
      s += std::fmin(1.0, 2 * std::pow(static_cast<double>(n), -cfg.theta));
    }
    return s;
  };
  return chunked_reduce<double>(2, x + 1, 1 << 16, 0.0, per_chunk,
                                [](double a, double b) { return a + b; });
}

// The sequence n = p + 2 weighted by f_n = chi(alpha p^2 + beta), odd primes
// p <= x - 2.  The fractional part is exact; only chi itself is floating.
inline WeightedSequence build_sequence(const ExperimentConfig& cfg, const BumpSpec& bump,
                                       const PrimeTable& table) {
  require_budget(cfg.x <= static_cast<double>(1ull << 27), "build_sequence: x over budget");
  require(static_cast<double>(table.limit()) > cfg.x, "build_sequence: table too small");
  WeightedSequence seq;
  seq.n_max = static_cast<std::uint64_t>(cfg.x);
  seq.f.assign(seq.n_max + 1, 0.0);
  std::uint64_t p_max = seq.n_max - 2;
  table.for_each_prime(3, p_max + 1, [&](std::uint64_t p) {
    UnitFrac t = add_mod1(frac_mul(cfg.alpha, static_cast<unsigned __int128>(p) * p), cfg.beta.fr);
    seq.f[p + 2] = bump_eval_direct(bump, to_double(t));
  });
  return seq;
}

struct R1Result {
  std::uint64_t d = 0;
  std::uint64_t progression_count = 0;  // pi(x-2; d, -2)
  double main_term = 0;                 // Li(x) / phi(d)
  double r1 = 0;
};

// pi(x-2; d, -2) - Li(x)/phi(d) for odd d.
inline R1Result remainder_r1(double x, std::uint64_t d, const PrimeTable& table) {
  require(d >= 1 && d % 2 == 1, "remainder_r1: d must be odd");
  require(x >= 4 && static_cast<double>(table.limit()) >= x, "remainder_r1: table too small");
  R1Result r;
  r.d = d;
  std::uint64_t p_max = static_cast<std::uint64_t>(x) - 2;
  std::uint64_t cnt = 0;
  table.for_each_prime(2, p_max + 1, [&](std::uint64_t p) {
    if ((p + 2) % d == 0) ++cnt;
  });
  r.progression_count = cnt;
  r.main_term = log_integral(x) / static_cast<double>(factor_count(d, table).phi);
  r.r1 = static_cast<double>(cnt) - r.main_term;
  return r;
}

struct R1Stats {
  double level_D = 0;
  std::uint64_t n_moduli = 0;  // odd squarefree d <= D
  double sum_abs = 0, max_abs = 0, mean_abs = 0;
  double norm_a1 = 0, norm_a2 = 0, norm_a3 = 0;  // sum_abs / (x / log^A x)
};

// Batch statistics of R1 over all odd squarefree d <= D, one prime scan.
inline R1Stats r1_stats(double x, double D, const PrimeTable& table) {
  require(x >= 16 && D >= 1, "r1_stats: bad inputs");
  require(static_cast<double>(table.limit()) >= x, "r1_stats: table too small");
  std::uint64_t d_max = static_cast<std::uint64_t>(D);
  std::vector<char> usable(d_max + 1, 0);  // odd squarefree
  std::vector<double> phi(d_max + 1, 0);
  for (std::uint64_t d = 1; d <= d_max; d += 2) {
    auto fc = factor_count(d, table);
    if (fc.mu != 0) {
      usable[d] = 1;
      phi[d] = static_cast<double>(fc.phi);
    }
  }
  std::vector<std::uint64_t> counts(d_max + 1, 0);
  std::uint64_t p_max = static_cast<std::uint64_t>(x) - 2;
  table.for_each_prime(2, p_max + 1, [&](std::uint64_t p) {
    std::uint64_t m = p + 2;
    auto f = factor(m, table);
    std::vector<std::uint64_t> divs{1};
    for (auto& [q, e] : f) {
      std::size_t old = divs.size();
      std::uint64_t qe = 1;
      for (int i = 0; i < e; ++i) {
        qe *= q;
        for (std::size_t j = 0; j < old; ++j) {
          std::uint64_t dd = divs[j] * qe;
          if (dd <= d_max) divs.push_back(dd);
        }
      }
    }
    for (std::uint64_t dd : divs)
      if (dd <= d_max && usable[dd]) ++counts[dd];
  });
  R1Stats s;
  s.level_D = D;
  double li = log_integral(x);
  for (std::uint64_t d = 1; d <= d_max; d += 2) {
    if (!usable[d]) continue;
    double r1 = static_cast<double>(counts[d]) - li / phi[d];
    ++s.n_moduli;
    s.sum_abs += std::fabs(r1);
    s.max_abs = std::fmax(s.max_abs, std::fabs(r1));
  }
  if (s.n_moduli) s.mean_abs = s.sum_abs / static_cast<double>(s.n_moduli);
  double lx = std::log(x);
  s.norm_a1 = s.sum_abs / (x / lx);
  s.norm_a2 = s.sum_abs / (x / (lx * lx));
  s.norm_a3 = s.sum_abs / (x / (lx * lx * lx));
  return s;
}

// Coefficients c(k) e(beta k) for k = 1..K-1 (strict |k| < K), hermitian.
inline CoefficientTable effective_coefficients(const BumpSpec& bump, const FixedReal& beta,
                                               std::uint64_t k_cap) {
  std::uint64_t K = bump.cutoff_K;
  std::uint64_t k_hi = K >= 1 ? K - 1 : 0;  // strict |k| < K
  if (k_cap > 0 && k_cap < k_hi) k_hi = k_cap;
  CoefficientTable c;
  c.K = k_hi;
  c.c_pos.reserve(k_hi);
  for (std::uint64_t k = 1; k <= k_hi; ++k)
    c.c_pos.push_back(bump.c[k] * e_of(frac_mul(beta, k)));
  return c;
}

// R2(d) = sum over 0 < |k| < K of c(k) e(beta k) sum over p <= x-2,
// p = -2 (mod d) of e(alpha p^2 k), evaluated directly.
inline std::complex<double> remainder_r2(double x, std::uint64_t d, const FixedReal& alpha,
                                         const CoefficientTable& c_eff, const PrimeTable& table) {
  require(d >= 1 && d % 2 == 1, "remainder_r2: d must be odd");
  require(x >= 4 && static_cast<double>(table.limit()) >= x, "remainder_r2: table too small");
  require_budget((x / static_cast<double>(d)) * static_cast<double>(c_eff.K) <= 2e9,
                 "remainder_r2: (x/d)*K over budget");
  std::complex<double> s{0, 0};
  std::uint64_t p_max = static_cast<std::uint64_t>(x) - 2;
  table.for_each_prime(2, p_max + 1, [&](std::uint64_t p) {
    if ((p + 2) % d != 0) return;
    s += detail::coefficient_sum(c_eff, frac_mul(alpha, static_cast<unsigned __int128>(p) * p));
  });
  return s;
}

struct WeightedR2 {
  std::complex<double> primes{0, 0};       // sum_d lambda(d) R2(d), unit prime weights
  std::complex<double> lambda_all{0, 0};   // Lambda(n) over prime powers n = -2 (d)
  std::complex<double> lambda_prime{0, 0}; // Lambda(n) restricted to primes
  double prime_power_diagnostic = 0;       // |lambda_all - lambda_prime|
  double ratio_to_x = 0;                   // |primes| / x
};

// sum over d of lambda(d) R2(d) in one pass over n <= x-2, with the
// Lambda-weighted variants computed alongside for the prime-power diagnostic.
inline WeightedR2 weighted_r2_sum(double x, const WeightTable& weights,
                                  const CoefficientTable& c_eff, const FixedReal& alpha,
                                  const PrimeTable& table) {
  require(x >= 16 && static_cast<double>(table.limit()) >= x, "weighted_r2_sum: table too small");
  require_budget(x * static_cast<double>(c_eff.K ? c_eff.K : 1) <= 2e12,
                 "weighted_r2_sum: x*K over budget");
  struct Acc {
    std::complex<double> pr{0, 0}, la{0, 0}, lp{0, 0};
  };
  std::uint64_t n_max = static_cast<std::uint64_t>(x) - 2;
  auto per_chunk = [&](std::uint64_t a, std::uint64_t b) {
    Acc acc;
    for (std::uint64_t n = a; n < b; ++n) {
      double lam = von_mangoldt(n, table);
      if (lam == 0) continue;
      double wsum = detail::divisor_weight_sum(n + 2, weights, table);
      if (wsum == 0) continue;
      std::complex<double> T =
          detail::coefficient_sum(c_eff, frac_mul(alpha, static_cast<unsigned __int128>(n) * n));
      acc.la += lam * wsum * T;
      if (table.is_prime(n)) {
        acc.pr += wsum * T;
        acc.lp += lam * wsum * T;
      }
    }
    return acc;
  };
  Acc t = chunked_reduce<Acc>(2, n_max + 1, 1 << 14, Acc{}, per_chunk, [](Acc a, Acc b) {
    a.pr += b.pr;
    a.la += b.la;
    a.lp += b.lp;
    return a;
  });
  WeightedR2 r;
  r.primes = t.pr;
  r.lambda_all = t.la;
  r.lambda_prime = t.lp;
  r.prime_power_diagnostic = std::abs(t.la - t.lp);
  r.ratio_to_x = std::abs(t.pr) / x;
  return r;
}

struct TwinConstant {
  double value = 0;  // partial product over 2 < p <= cutoff
  double lower = 0, upper = 0;  // analytic bracket for the full product
  std::uint64_t cutoff = 0;
};

// prod over p > 2 of (1 - 1/(p-1)^2).  The tail satisfies
// 0 > log(tail) > -1.01/(cutoff-1) once cutoff >= 100.
inline TwinConstant twin_constant(std::uint64_t cutoff = 100000000ull) {
  require(cutoff >= 100, "twin_constant: cutoff too small");
  require_budget(cutoff <= 2e9, "twin_constant: cutoff over budget");
  TwinConstant t;
  t.cutoff = cutoff;
  double log_prod = 0;
  segmented_primes(3, cutoff + 1, [&](std::uint64_t p) {
    double y = 1.0 / (static_cast<double>(p) - 1);
    log_prod += std::log1p(-y * y);
  });
  t.value = std::exp(log_prod);
  t.upper = t.value;
  t.lower = t.value * std::exp(-1.01 / (static_cast<double>(cutoff) - 1));
  return t;
}

struct ExperimentReport {
  int schema = 1;
  ExperimentConfig cfg;
  std::uint64_t direct_count = 0;
  double expected = 0;
  std::uint64_t witness_count = 0;
  std::vector<GoodPrimeWitness> witnesses;  // not serialized in the JSON report
  double sum_f = 0;          // sum of sequence weights
  std::uint64_t odd_primes = 0;  // #odd primes <= x-2 (sequence support)
  double calibration_ratio = 0;  // sum_f / (delta * odd_primes)
  BuchstabTerms buchstab;
  bool assembled_le_exact = false;    // assembled lower <= exact target
  bool assembled_le_p2_form = false;  // assembled lower <= p2 + nonsquarefree mass
  bool decomposition_positive = false;
  R1Stats r1;
  WeightedR2 r2;
  TwinConstant c0;
  std::vector<std::string> methodology_notes;
};

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = r.schema;
  j["inputs"] = {{"alpha", r.cfg.alpha_desc}, {"beta", r.cfg.beta_desc},
                 {"x", r.cfg.x},             {"theta", r.cfg.theta},
                 {"delta", r.cfg.delta},     {"z_exp", r.cfg.z_exp},
                 {"p1_exp", r.cfg.p1_exp},   {"level_D", r.cfg.level_D},
                 {"q", r.cfg.q},             {"r2_k_cap", r.cfg.r2_k_cap},
                 {"theorem_regime", r.cfg.theorem_regime}};
  j["direct_count"] = r.direct_count;
  j["expected_count"] = r.expected;
  j["witness_count"] = r.witness_count;
  j["sequence"] = {{"sum_f", r.sum_f},
                   {"odd_primes", r.odd_primes},
                   {"calibration_ratio", r.calibration_ratio}};
  auto piece = [](const BuchstabPiece& p) {
    return json{{"exact", p.exact}, {"lower", p.lower}, {"upper", p.upper}};
  };
  j["buchstab"] = {{"z", r.buchstab.z},
                   {"y", r.buchstab.y},
                   {"s1", piece(r.buchstab.s1)},
                   {"s2", piece(r.buchstab.s2)},
                   {"s3", piece(r.buchstab.s3)},
                   {"s4", piece(r.buchstab.s4)},
                   {"direct_value", r.buchstab.direct_value},
                   {"assembled_lower", r.buchstab.assembled_lower},
                   {"target_exact", r.buchstab.target_exact},
                   {"p2_mass", r.buchstab.p2_mass},
                   {"nonsquarefree_mass", r.buchstab.nonsquarefree_mass},
                   {"assembled_le_exact", r.assembled_le_exact},
                   {"assembled_le_p2_form", r.assembled_le_p2_form},
                   {"decomposition_positive", r.decomposition_positive}};
  j["r1_stats"] = {{"level_D", r.r1.level_D}, {"n_moduli", r.r1.n_moduli},
                   {"sum_abs", r.r1.sum_abs}, {"max_abs", r.r1.max_abs},
                   {"mean_abs", r.r1.mean_abs}, {"norm_a1", r.r1.norm_a1},
                   {"norm_a2", r.r1.norm_a2},   {"norm_a3", r.r1.norm_a3}};
  j["r2_weighted"] = {{"re", r.r2.primes.real()},
                      {"im", r.r2.primes.imag()},
                      {"abs", std::abs(r.r2.primes)},
                      {"ratio_to_x", r.r2.ratio_to_x},
                      {"prime_power_diagnostic", r.r2.prime_power_diagnostic}};
  j["twin_constant"] = {{"value", r.c0.value},
                        {"lower", r.c0.lower},
                        {"upper", r.c0.upper},
                        {"cutoff", r.c0.cutoff}};
  j["methodology_notes"] = r.methodology_notes;
  return j;
}

inline std::string witness_csv(const std::vector<GoodPrimeWitness>& ws) {
  std::string out = "p,omega_p_plus_2,dist,p_to_minus_theta\n";
  char buf[128];
  for (auto& w : ws) {
    std::snprintf(buf, sizeof buf, "%llu,%d,%.17g,%.17g\n",
                  static_cast<unsigned long long>(w.p), w.omega, w.dist, w.threshold);
    out += buf;
  }
  return out;
}

// The full pipeline at one parameter point.  The prime table must have SPF
// data and cover x + 2.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, const PrimeTable& table) {
  require(table.has_spf() && static_cast<double>(table.limit()) >= cfg.x + 2,
          "run_experiment: need an SPF table covering x + 2");
  ExperimentReport rep;
  rep.cfg = cfg;

  BumpSpec bump = build_bump(cfg.delta, cfg.x);
  WeightedSequence seq = build_sequence(cfg, bump, table);
  for (double v : seq.f) rep.sum_f += v;
  std::uint64_t p_max = seq.n_max - 2;
  std::uint64_t n_primes = 0;
  table.for_each_prime(3, p_max + 1, [&](std::uint64_t) { ++n_primes; });
  rep.odd_primes = n_primes;
  rep.calibration_ratio = rep.sum_f / (cfg.delta * static_cast<double>(n_primes));

  GoodPrimeCount gp = count_good_primes(cfg, table);
  rep.direct_count = gp.count;
  rep.witness_count = gp.witnesses.size();
  rep.witnesses = std::move(gp.witnesses);
  rep.expected = expected_count(cfg, table);

  double z = std::pow(cfg.x, cfg.z_exp);
  std::vector<std::uint64_t> sieving;
  table.for_each_prime(3, static_cast<std::uint64_t>(std::ceil(z)), [&](std::uint64_t p) {
    if (static_cast<double>(p) < z) sieving.push_back(p);
  });
  rep.buchstab = buchstab_terms(seq, cfg.x, table, sieving, cfg.level_D, cfg.z_exp, cfg.p1_exp);
  rep.assembled_le_exact = rep.buchstab.assembled_lower <= rep.buchstab.target_exact + 1e-9;
  rep.assembled_le_p2_form =
      rep.buchstab.assembled_lower <=
      rep.buchstab.p2_mass + rep.buchstab.nonsquarefree_mass + 1e-9;
  rep.decomposition_positive = rep.buchstab.direct_value > 0;

  rep.r1 = r1_stats(cfg.x, cfg.level_D, table);

  CoefficientTable c_eff = effective_coefficients(bump, cfg.beta, cfg.r2_k_cap);
  RosserWeightTable lam =
      rosser_weights(std::fmax(cfg.level_D, 2.0), z, -1, sieving);
  rep.r2 = weighted_r2_sum(cfg.x, WeightTable::from_rosser(lam), c_eff, cfg.alpha, table);

  rep.c0 = twin_constant(10000000ull);

  rep.methodology_notes = {
      "p = 2 contributes to direct counts only; the sieve sequence starts at p = 3.",
      "sieving primes are odd (omega(2) = 0); progressions run over p = -2 (mod d).",
      "the k-sum in r2 columns is truncated at r2_k_cap; the dropped Fourier tail "
      "is controlled by the series tail bound, reported by the bump module.",
      "the Fourier mean is delta and the k-sum is not rescaled by delta; the "
      "variant with an extra delta factor in the k-sum is not used.",
      "r2 weights come from the lower Rosser table at (level_D, z).",
      "the four-term decomposition provably bounds the weighted mass of sifted "
      "almost-primes (p2_mass + nonsquarefree_mass), and that check is exact; "
      "comparing against the fully-sifted target S(A, x^(1/3)) undercounts "
      "almost-primes with a factor below x^(1/3) and can run negative.",
  };
  return rep;
}

}  // namespace mod1

#endif
