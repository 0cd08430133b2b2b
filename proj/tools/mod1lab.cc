// mod1lab: command-line front end for the library.  Every command is
// deterministic given (parameters, seed, thread count) and writes either CSV
// or versioned JSON; timing chatter goes to stderr so output files stay
// byte-reproducible.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mod1/arithmetic_functions.hpp"
#include "mod1/bump.hpp"
#include "mod1/continued_fraction.hpp"
#include "mod1/errors.hpp"
#include "mod1/experiment.hpp"
#include "mod1/expsum.hpp"
#include "mod1/fixed_real.hpp"
#include "mod1/parallel.hpp"
#include "mod1/prime_table.hpp"
#include "mod1/rosser.hpp"
#include "mod1/run_config.hpp"
#include "mod1/sieve_bounds.hpp"
#include "mod1/sieve_functions.hpp"
#include "mod1/sieve_params.hpp"
#include "mod1/vaughan.hpp"

using json = nlohmann::ordered_json;
using namespace mod1;

namespace {

// Real-number descriptors: sqrt:<d>, int:<v>, ratio:<n>/<d>,
// fixed:<ip>.<hex>/<F> (hex mantissa of an F-bit fraction).  Decimal strings
// are deliberately not accepted.
FixedReal parse_real_desc(const std::string& desc) {
  auto colon = desc.find(':');
  require(colon != std::string::npos,
          "real descriptor '" + desc + "': expected kind:value (sqrt:, int:, ratio:, fixed:)");
  std::string kind = desc.substr(0, colon);
  std::string rest = desc.substr(colon + 1);
  try {
    if (kind == "sqrt") return fixed_from_sqrt(std::stoull(rest));
    if (kind == "int") return fixed_from_integer(std::stoll(rest));
    if (kind == "ratio") {
      auto slash = rest.find('/');
      require(slash != std::string::npos, "ratio descriptor needs n/d");
      return fixed_from_ratio(std::stoll(rest.substr(0, slash)),
                              std::stoll(rest.substr(slash + 1)));
    }
    if (kind == "fixed") {
      long long ip = 0;
      std::string mant = rest;
      auto dot = rest.find('.');
      if (dot != std::string::npos) {
        ip = std::stoll(rest.substr(0, dot));
        mant = rest.substr(dot + 1);
      }
      auto slash = mant.find('/');
      require(slash != std::string::npos, "fixed descriptor needs <hex>/<F>");
      int f_bits = std::stoi(mant.substr(slash + 1));
      return fixed_from_hex_mantissa(ip, mant.substr(0, slash), f_bits);
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError("real descriptor '" + desc + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw ValidationError("real descriptor '" + desc + "': number out of range");
  }
  throw ValidationError("real descriptor '" + desc + "': unknown kind '" + kind + "'");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot open output file '" + path + "'");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  require(f.good(), "write failed for '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::uint64_t> primes_below(const PrimeTable& t, double z, bool odd_only) {
  std::vector<std::uint64_t> out;
  t.for_each_prime(2, static_cast<std::uint64_t>(std::ceil(z)), [&](std::uint64_t p) {
    if (static_cast<double>(p) < z && !(odd_only && p == 2)) out.push_back(p);
  });
  return out;
}

char fmt_buf[192];

std::string real17(double v) {
  std::snprintf(fmt_buf, sizeof fmt_buf, "%.17g", v);
  return fmt_buf;
}

struct Options {
  // shared
  std::string out, config;
  // convergents
  std::string alpha = "sqrt:2";
  int count = 10;
  long long q_min = -1, q_max = -1;
  // primes / classify
  std::uint64_t limit = 100;
  std::uint64_t lo = 0, hi = 0;
  bool count_only = false;
  // bump
  double delta = 0.01;
  double x = 1e6;
  std::string mode = "coeffs";
  int grid_points = 1001;
  // expsum
  std::uint64_t X = 10000, d = 1, a = 0;
  std::uint64_t probes = 0, seed = 12345, d_cap = 10000;
  // vaughan
  double u_param = 0, v_param = 0;
  std::string g_kind = "one";
  long long k_mult = 1;
  // lemma-bounds
  std::string kind = "t1";
  double K_param = 16, Delta_param = 4, q_real = 64, omega_exp = 0.01;
  double Y_param = 16;
  std::uint64_t M_param = 64, S_param = 8, J_param = 16;
  int tau_mu = 2, tau_sigma = 2, tau_zeta = 2;
  // rosser / sieve-bounds
  double level = 100, z = 10;
  std::string parity = "upper";
  bool odd_only = false;
  std::string seq = "ones";
  std::uint64_t n_max = 10000;
  // sieve-functions
  double s_max = 10, step = 1e-3;
  int stride = 1;
  // experiment
  std::string beta = "int:0";
  double theta = 0.3;
  double z_exp = 1.0 / 12, p1_exp = 1.0 / 3.1;
  double level_D = 100;
  std::uint64_t r2_k_cap = 2000;
  bool theorem_regime = false;
  std::uint64_t q_sel = 0;
  std::string witness_out;
  // lemma1-scan
  std::vector<double> x_list;
  double delta_exp = 32.34 / 33;
};

void run_convergents(const Options& o) {
  FixedReal alpha = parse_real_desc(o.alpha);
  std::string csv;
  if (o.q_min >= 0 && o.q_max > o.q_min) {
    csv = "a,q,quality_ok\n";
    auto sel = select_denominator(alpha, o.q_min, o.q_max);
    if (sel) {
      Convergent c = *sel;
      csv += std::to_string(c.a) + "," + std::to_string(c.q) + "," +
             (convergent_quality_ok(alpha, c) ? "1" : "0") + "\n";
    }
  } else {
    require(o.count >= 1 && o.count <= 200, "convergents: count must be in [1, 200]");
    csv = "i,a,q,quality_ok\n";
    auto cs = convergents(alpha, o.count);
    for (std::size_t i = 0; i < cs.size(); ++i)
      csv += std::to_string(i) + "," + std::to_string(cs[i].a) + "," + std::to_string(cs[i].q) +
             "," + (convergent_quality_ok(alpha, cs[i]) ? "1" : "0") + "\n";
  }
  write_output(o.out, csv);
}

void run_primes(const Options& o) {
  std::uint64_t lo = o.lo, hi = o.hi;
  if (hi == 0) {
    lo = 2;
    hi = o.limit + 1;
  }
  require(hi > lo, "primes: empty range");
  require_budget(hi <= 2000000000ull, "primes: range end over budget");
  std::string csv;
  if (o.count_only) {
    std::uint64_t c = 0;
    segmented_primes(lo, hi, [&](std::uint64_t) { ++c; });
    csv = "count\n" + std::to_string(c) + "\n";
  } else {
    require_budget(hi - lo <= 10000000ull, "primes: listing over budget, use --count-only");
    csv = "p\n";
    segmented_primes(lo, hi, [&](std::uint64_t p) { csv += std::to_string(p) + "\n"; });
  }
  write_output(o.out, csv);
}

void run_classify(const Options& o) {
  require_budget(o.limit <= 100000000ull, "classify: limit over budget");
  PrimeTable table(o.limit + 3, true);
  std::string csv = "p,p_plus_2,big_omega\n";
  table.for_each_prime(2, o.limit + 1, [&](std::uint64_t p) {
    FactorCount fc = factor_count(p + 2, table);
    if (fc.big_omega <= 2)
      csv += std::to_string(p) + "," + std::to_string(p + 2) + "," +
             std::to_string(fc.big_omega) + "\n";
  });
  write_output(o.out, csv);
}

void run_bump(const Options& o) {
  BumpSpec s = build_bump(o.delta, o.x);
  if (o.mode == "coeffs") {
    write_output(o.out, bump_csv(s));
    return;
  }
  if (o.mode == "grid") {
    require(o.grid_points >= 2 && o.grid_points <= 2000000, "bump: bad grid size");
    std::string csv = "t,chi_direct,chi_fourier\n";
    for (int i = 0; i < o.grid_points; ++i) {
      double t = -0.5 + static_cast<double>(i) / o.grid_points;
      csv += real17(t) + "," + real17(bump_eval_direct(s, t)) + "," +
             real17(bump_eval_fourier(s, t, s.cutoff_K)) + "\n";
    }
    write_output(o.out, csv);
    return;
  }
  if (o.mode == "spec") {
    json j;
    j["operation"] = "bump-spec";
    j["inputs"] = {{"delta", o.delta}, {"x", o.x}};
    j["r"] = s.r;
    j["h_scale"] = s.h_scale;
    j["delta2"] = s.delta2;
    j["w"] = s.w;
    j["cutoff_K"] = s.cutoff_K;
    j["c0"] = s.c[0];
    j["tail_bound_at_K"] = bump_tail_bound(s, s.cutoff_K);
    write_output(o.out, dump(j));
    return;
  }
  throw ValidationError("bump: mode must be coeffs, grid, or spec");
}

void run_expsum(const Options& o) {
  FixedReal alpha = parse_real_desc(o.alpha);
  json j;
  if (o.probes == 0) {
    ProgressionSum s = eval_progression_sum(alpha, o.X, o.d, o.a);
    Lemma3Result l3 = lemma3_check(alpha, o.X, o.d, o.a);
    j["operation"] = "expsum";
    j["inputs"] = {{"alpha", o.alpha}, {"X", o.X}, {"d", o.d}, {"a", o.a}};
    j["value_re"] = s.value.real();
    j["value_im"] = s.value.imag();
    j["terms"] = s.terms;
    j["closed_form"] = s.closed_form;
    j["lemma3"] = {{"magnitude", l3.magnitude},
                   {"bound_count", l3.bound_count},
                   {"bound_spacing", l3.bound_spacing},
                   {"bound", l3.bound},
                   {"pass", l3.pass}};
  } else {
    require_budget(o.probes <= 10000000ull, "expsum: probes over budget");
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::uint64_t> dist_d(1, o.d_cap);
    std::uint64_t violations = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < o.probes; ++i) {
      std::uint64_t d = dist_d(rng);
      std::uint64_t a = rng() % d;
      std::uint64_t X = 1 + rng() % o.X;
      UnitFrac fr{{rng(), rng(), rng()}};
      FixedReal al{0, fr};
      Lemma3Result r = lemma3_check(al, X, d, a);
      if (!r.pass) ++violations;
      if (r.bound > 0 && r.magnitude / r.bound > worst) worst = r.magnitude / r.bound;
    }
    j["operation"] = "expsum-probes";
    j["inputs"] = {{"probes", o.probes}, {"seed", o.seed}, {"d_cap", o.d_cap}, {"X_cap", o.X}};
    j["violations"] = violations;
    j["worst_ratio"] = worst;
  }
  write_output(o.out, dump(j));
}

void run_vaughan(const Options& o) {
  double U = o.u_param > 0 ? o.u_param : std::cbrt(o.x);
  double V = o.v_param > 0 ? o.v_param : std::cbrt(o.x);
  PrimeTable table(static_cast<std::uint64_t>(o.x) + 1, true);
  VaughanDecomposition dec = vaughan_decompose(o.x, U, V, table);
  FixedReal alpha = parse_real_desc(o.alpha);
  long long k = o.g_kind == "phase3" ? 3 : o.k_mult;
  auto g = [&](std::uint64_t n) -> std::complex<double> {
    if (o.g_kind == "one") return {1, 0};
    UnitFrac t = frac_mul(alpha, static_cast<unsigned __int128>(n) * n);
    return e_of(mul_mod1(t, static_cast<unsigned __int128>(k)));
  };
  require(o.g_kind == "one" || o.g_kind == "phase" || o.g_kind == "phase3",
          "vaughan-check: g must be one, phase, or phase3");
  VaughanComponents comp = eval_vaughan_components(dec, g, table);
  std::complex<double> direct = vaughan_direct_sum(dec, g, table);
  double abs_err = std::abs(comp.total - direct);
  double rel = abs_err / std::fmax(1e-300, std::abs(direct));
  json j;
  j["operation"] = "vaughan-check";
  j["inputs"] = {{"x", o.x},           {"U", U}, {"V", V},
                 {"alpha", o.alpha},   {"g", o.g_kind},
                 {"k", o.g_kind == "one" ? 0 : k}};
  j["type_Ia"] = {{"re", comp.type_Ia.real()}, {"im", comp.type_Ia.imag()}};
  j["type_Ib"] = {{"re", comp.type_Ib.real()}, {"im", comp.type_Ib.imag()}};
  j["type_II"] = {{"re", comp.type_II.real()}, {"im", comp.type_II.imag()}};
  j["total"] = {{"re", comp.total.real()}, {"im", comp.total.imag()}};
  j["direct"] = {{"re", direct.real()}, {"im", direct.imag()}};
  j["abs_error"] = abs_err;
  j["rel_error"] = rel;
  j["coefficient_bounds_ok"] =
      vaughan_coefficient_bounds_ok(dec, static_cast<std::uint64_t>(U * V), table);
  write_output(o.out, dump(j));
}

void run_lemma_bounds(const Options& o) {
  json j;
  j["operation"] = "lemma-bounds";
  if (o.kind == "t1") {
    BoundTerms b = theorem1_bound(o.x, o.K_param, o.Delta_param, o.q_real);
    j["inputs"] = {{"kind", "t1"},
                   {"x", o.x},
                   {"K", o.K_param},
                   {"Delta", o.Delta_param},
                   {"q", o.q_real}};
    j["log_terms"] = std::vector<double>(b.log_terms, b.log_terms + 5);
    j["terms"] = std::vector<double>(b.terms, b.terms + 5);
    j["sum"] = b.sum;
    j["eps"] = b.eps;
    j["eps_factor"] = b.eps_factor;
    j["total"] = b.total;
    j["trivial"] = b.trivial;
    j["ratio_trivial"] = b.ratio_trivial;
  } else if (o.kind == "window") {
    QWindow w = remark2_window(o.x, o.K_param, o.Delta_param, o.omega_exp);
    j["inputs"] = {{"kind", "window"},
                   {"x", o.x},
                   {"K", o.K_param},
                   {"Delta", o.Delta_param},
                   {"omega_exp", o.omega_exp}};
    j["log_lo"] = w.log_lo;
    j["log_hi"] = w.log_hi;
    j["q_lo"] = w.q_lo;
    j["q_hi"] = w.q_hi;
    j["nonempty"] = w.nonempty;
  } else if (o.kind == "l4") {
    FixedReal alpha = parse_real_desc(o.alpha);
    Lemma4Result r = eval_lemma4_sum(alpha, static_cast<double>(o.X), o.Y_param,
                                     static_cast<std::uint64_t>(o.q_real));
    j["inputs"] = {{"kind", "l4"}, {"alpha", o.alpha}, {"X", o.X}, {"Y", o.Y_param},
                   {"q", static_cast<std::uint64_t>(o.q_real)}};
    j["value"] = r.value;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
  } else if (o.kind == "l5") {
    FixedReal alpha = parse_real_desc(o.alpha);
    PrimeTable table(2 * std::max(o.M_param, o.J_param) + 2, true);
    double lhs = eval_lemma5_sum(alpha, o.M_param, o.J_param, o.x, o.tau_mu, o.tau_zeta, table);
    double lx = std::log(o.x);
    double M = static_cast<double>(o.M_param), J = static_cast<double>(o.J_param);
    double q = o.q_real;
    double t1 = M * J, t2 = o.x / std::pow(M, 1.5), t3 = o.x / (M * std::sqrt(q)),
           t4 = std::sqrt(o.x * q) / M;
    double total = lx * (t1 + t2 + t3 + t4);
    j["inputs"] = {{"kind", "l5"}, {"alpha", o.alpha}, {"M", o.M_param}, {"J", o.J_param},
                   {"x", o.x},     {"mu", o.tau_mu},   {"zeta", o.tau_zeta}, {"q", q}};
    j["value"] = lhs;
    j["bound_terms"] = {t1, t2, t3, t4};
    j["eps_factor"] = lx;
    j["total"] = total;
    j["ratio"] = lhs / total;
  } else if (o.kind == "l7") {
    FixedReal alpha = parse_real_desc(o.alpha);
    PrimeTable table(2 * std::max({o.M_param, o.S_param, o.J_param}) + 2, true);
    GResult g = eval_G(alpha, o.M_param, o.S_param, o.J_param, o.x, o.tau_mu, o.tau_sigma,
                       o.tau_zeta, static_cast<std::uint64_t>(o.q_real), table);
    j["inputs"] = {{"kind", "l7"},      {"alpha", o.alpha},  {"M", o.M_param},
                   {"S", o.S_param},    {"J", o.J_param},    {"x", o.x},
                   {"mu", o.tau_mu},    {"sigma", o.tau_sigma}, {"zeta", o.tau_zeta},
                   {"q", o.q_real}};
    j["value"] = g.value;
    j["bound9"] = g.bound9;
    j["bound10"] = g.bound10;
    j["ratio9"] = g.ratio9;
    j["ratio10"] = g.ratio10;
    j["eps_factor"] = g.eps_factor;
  } else {
    throw ValidationError("lemma-bounds: kind must be t1, window, l4, l5, or l7");
  }
  write_output(o.out, dump(j));
}

void run_rosser(const Options& o) {
  require(o.parity == "upper" || o.parity == "lower", "rosser: parity must be upper or lower");
  PrimeTable table(static_cast<std::uint64_t>(std::ceil(o.z)) + 2, false);
  auto sieving = primes_below(table, o.z, o.odd_only);
  RosserWeightTable t =
      rosser_weights(o.level, o.z, o.parity == "upper" ? +1 : -1, sieving);
  write_output(o.out, rosser_csv(t));
}

void run_sieve_functions(const Options& o) {
  require(o.step >= 1e-5 && o.step <= 1e-2, "sieve-functions: step outside [1e-5, 1e-2]");
  require(o.s_max <= 20, "sieve-functions: s_max over 20");
  int per_unit = static_cast<int>(std::llround(1.0 / o.step));
  SieveFunctionTable t = sieve_functions(o.s_max, per_unit);
  write_output(o.out, sieve_functions_csv(t, o.stride));
}

void run_sieve_bounds(const Options& o) {
  WeightedSequence seq;
  std::vector<std::uint64_t> sieving;
  double X_scale = 0;
  std::function<double(std::uint64_t)> omega;
  json inputs;
  if (o.seq == "ones") {
    require(o.n_max >= 2, "sieve-bounds: n_max too small");
    require_budget(o.n_max <= (1ull << 27), "sieve-bounds: n_max over budget");
    seq.n_max = o.n_max;
    seq.f.assign(o.n_max + 1, 1.0);
    seq.f[0] = 0;
    PrimeTable table(static_cast<std::uint64_t>(std::ceil(o.z)) + 2, false);
    sieving = primes_below(table, o.z, false);
    X_scale = static_cast<double>(o.n_max);
    omega = [](std::uint64_t) { return 1.0; };
    inputs = {{"seq", "ones"}, {"n_max", o.n_max}, {"z", o.z}, {"level", o.level}};
  } else if (o.seq == "twin") {
    ExperimentConfig cfg;
    cfg.alpha = parse_real_desc(o.alpha);
    cfg.beta = parse_real_desc(o.beta);
    cfg.x = o.x;
    cfg.delta = o.delta;
    PrimeTable table(static_cast<std::uint64_t>(o.x) + 3, true);
    BumpSpec bump = build_bump(cfg.delta, cfg.x);
    seq = build_sequence(cfg, bump, table);
    sieving = primes_below(table, o.z, true);
    for (double v : seq.f) X_scale += v;
    omega = [](std::uint64_t p) { return static_cast<double>(p) / (static_cast<double>(p) - 1); };
    inputs = {{"seq", "twin"},   {"x", o.x}, {"delta", o.delta}, {"alpha", o.alpha},
              {"beta", o.beta},  {"z", o.z}, {"level", o.level}};
  } else {
    throw ValidationError("sieve-bounds: seq must be ones or twin");
  }
  RosserWeightTable lo = rosser_weights(o.level, o.z, -1, sieving);
  RosserWeightTable hi = rosser_weights(o.level, o.z, +1, sieving);
  std::vector<char> mask = build_sifted_mask(seq.n_max, sieving);
  double s = std::log(o.level) / std::log(o.z);
  SieveFunctionTable ft = sieve_functions(std::fmin(64.0, std::fmax(4.0, s + 2)), 1000);
  SieveBounds b = sieve_bounds(
      seq, 1, lo, hi, mask, X_scale, omega, [&](double v) { return ft.F_of(v); },
      [&](double v) { return ft.f_of(v); });
  json j;
  j["operation"] = "sieve-bounds";
  j["inputs"] = inputs;
  j["lower"] = b.lower;
  j["exact"] = b.exact;
  j["upper"] = b.upper;
  j["sandwich_ok"] = b.lower <= b.exact + 1e-9 && b.exact <= b.upper + 1e-9;
  j["V_z"] = b.V_z;
  j["s"] = b.s;
  j["main_lower"] = b.main_lower;
  j["main_upper"] = b.main_upper;
  write_output(o.out, dump(j));
}

void run_experiment_cmd(const Options& o) {
  ExperimentConfig cfg;
  cfg.alpha = parse_real_desc(o.alpha);
  cfg.beta = parse_real_desc(o.beta);
  cfg.alpha_desc = o.alpha;
  cfg.beta_desc = o.beta;
  cfg.x = o.x;
  cfg.theta = o.theta;
  cfg.delta = o.delta;
  cfg.z_exp = o.z_exp;
  cfg.p1_exp = o.p1_exp;
  cfg.level_D = o.level_D;
  cfg.q = o.q_sel;
  cfg.r2_k_cap = o.r2_k_cap;
  cfg.theorem_regime = o.theorem_regime;
  PrimeTable table(static_cast<std::uint64_t>(o.x) + 3, true);
  ExperimentReport rep = run_experiment(cfg, table);
  write_output(o.out, dump(report_to_json(rep)));
  if (!o.witness_out.empty()) write_output(o.witness_out, witness_csv(rep.witnesses));
}

void run_lemma1_scan(const Options& o) {
  std::vector<double> xs = o.x_list;
  if (xs.empty()) xs = {1e5, 1e6, 1e7};
  json rows = json::array();
  Lemma1Params first = lemma1_params(o.theta, xs.front(), o.delta_exp);
  for (double x : xs) {
    Lemma1Params p = lemma1_params(o.theta, x, o.delta_exp);
    rows.push_back({{"x", p.x},
                    {"K", p.K},
                    {"Delta", p.Delta},
                    {"D", p.D},
                    {"usable_level", p.usable_level}});
  }
  json j;
  j["operation"] = "lemma1-scan";
  j["inputs"] = {{"theta", o.theta}, {"delta_exp", o.delta_exp}};
  j["threshold_log_x"] = first.threshold_log_x;
  j["threshold_x"] = first.threshold_x;
  j["rows"] = rows;
  write_output(o.out, dump(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"number-theory laboratory: exponential sums, sieves, and the "
               "almost-prime experiment pipeline"};
  app.require_subcommand(1);
  app.fallthrough(true);
  Options o;
  app.add_option_function<int>(
      "--threads", [](const int& n) { thread_budget() = n < 1 ? 1 : n; },
      "worker thread count (outputs are identical for any value)");

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output file (stdout when omitted)");
    c->add_option("--config", o.config, "flat key=value config file; command line wins");
  };

  CLI::App* c_conv = app.add_subcommand("convergents", "continued-fraction convergents of alpha");
  c_conv->add_option("--alpha", o.alpha, "real descriptor, e.g. sqrt:2");
  c_conv->add_option("--count", o.count, "how many convergents");
  c_conv->add_option("--q-min", o.q_min, "select: smallest admissible denominator");
  c_conv->add_option("--q-max", o.q_max, "select: exclusive upper bound");
  add_common(c_conv);
  c_conv->callback([&] { run_convergents(o); });

  CLI::App* c_primes = app.add_subcommand("primes", "prime listing and counting");
  c_primes->add_option("--limit", o.limit, "list primes <= limit");
  c_primes->add_option("--lo", o.lo, "range start (overrides --limit)");
  c_primes->add_option("--hi", o.hi, "range end, exclusive");
  c_primes->add_flag("--count-only", o.count_only, "emit the count instead of rows");
  add_common(c_primes);
  c_primes->callback([&] { run_primes(o); });

  CLI::App* c_cls = app.add_subcommand("classify", "primes p <= limit with p+2 an almost-prime P2");
  c_cls->add_option("--limit", o.limit, "prime bound");
  add_common(c_cls);
  c_cls->callback([&] { run_classify(o); });

  CLI::App* c_bump = app.add_subcommand("bump", "smoothed indicator: coefficients, grid, or spec");
  c_bump->add_option("--delta", o.delta, "half-width in (0, 1/2)");
  c_bump->add_option("--x", o.x, "scale fixing r and the series cutoff");
  c_bump->add_option("--mode", o.mode, "coeffs | grid | spec");
  c_bump->add_option("--grid-points", o.grid_points, "rows in grid mode");
  add_common(c_bump);
  c_bump->callback([&] { run_bump(o); });

  CLI::App* c_exp = app.add_subcommand("expsum", "geometric progression sums and the spacing bound");
  c_exp->add_option("--alpha", o.alpha, "real descriptor");
  c_exp->add_option("--X", o.X, "range limit");
  c_exp->add_option("--d", o.d, "modulus");
  c_exp->add_option("--a", o.a, "residue");
  c_exp->add_option("--probes", o.probes, "random instances (0 = single evaluation)");
  c_exp->add_option("--seed", o.seed, "probe RNG seed");
  c_exp->add_option("--d-cap", o.d_cap, "largest probe modulus");
  add_common(c_exp);
  c_exp->callback([&] { run_expsum(o); });

  CLI::App* c_vau = app.add_subcommand("vaughan-check", "identity decomposition vs the direct sum");
  c_vau->add_option("--x", o.x, "upper end of the prime-power sum");
  c_vau->add_option("--u", o.u_param, "U cut (default x^(1/3))");
  c_vau->add_option("--v", o.v_param, "V cut (default x^(1/3))");
  c_vau->add_option("--g", o.g_kind, "test function: one | phase | phase3");
  c_vau->add_option("--k", o.k_mult, "phase multiplier for g=phase");
  c_vau->add_option("--alpha", o.alpha, "real descriptor for the phase");
  add_common(c_vau);
  c_vau->callback([&] { run_vaughan(o); });

  CLI::App* c_lb = app.add_subcommand("lemma-bounds", "bound-shape evaluations: t1, window, l4, l5, l7");
  c_lb->add_option("--kind", o.kind, "t1 | window | l4 | l5 | l7");
  c_lb->add_option("--x", o.x, "scale");
  c_lb->add_option("--K", o.K_param, "frequency count");
  c_lb->add_option("--Delta", o.Delta_param, "spacing scale");
  c_lb->add_option("--q", o.q_real, "convergent denominator");
  c_lb->add_option("--omega-exp", o.omega_exp, "window lower-edge exponent");
  c_lb->add_option("--X", o.X, "l4 range");
  c_lb->add_option("--Y", o.Y_param, "l4 cap factor");
  c_lb->add_option("--M", o.M_param, "dyadic block for m");
  c_lb->add_option("--S", o.S_param, "dyadic block for s");
  c_lb->add_option("--J", o.J_param, "dyadic block for j");
  c_lb->add_option("--mu", o.tau_mu, "tau order on m");
  c_lb->add_option("--sigma", o.tau_sigma, "tau order on s");
  c_lb->add_option("--zeta", o.tau_zeta, "tau order on j");
  c_lb->add_option("--alpha", o.alpha, "real descriptor");
  add_common(c_lb);
  c_lb->callback([&] { run_lemma_bounds(o); });

  CLI::App* c_ros = app.add_subcommand("rosser", "combinatorial sieve weight table as CSV");
  c_ros->add_option("--level", o.level, "level D");
  c_ros->add_option("--z", o.z, "sifting limit");
  c_ros->add_option("--parity", o.parity, "upper | lower");
  c_ros->add_flag("--odd-only", o.odd_only, "exclude 2 from the sieving primes");
  add_common(c_ros);
  c_ros->callback([&] { run_rosser(o); });

  CLI::App* c_sf = app.add_subcommand("sieve-functions", "delay-system functions F and f as CSV");
  c_sf->add_option("--s-max", o.s_max, "grid end");
  c_sf->add_option("--step", o.step, "grid step in [1e-5, 1e-2]");
  c_sf->add_option("--stride", o.stride, "emit every stride-th row");
  add_common(c_sf);
  c_sf->callback([&] { run_sieve_functions(o); });

  CLI::App* c_sb = app.add_subcommand("sieve-bounds", "weight-table bounds vs an exact sifted scan");
  c_sb->add_option("--seq", o.seq, "ones | twin");
  c_sb->add_option("--n-max", o.n_max, "sequence end for seq=ones");
  c_sb->add_option("--z", o.z, "sifting limit");
  c_sb->add_option("--level", o.level, "weight-table level D");
  c_sb->add_option("--x", o.x, "scale for seq=twin");
  c_sb->add_option("--delta", o.delta, "bump half-width for seq=twin");
  c_sb->add_option("--alpha", o.alpha, "real descriptor for seq=twin");
  c_sb->add_option("--beta", o.beta, "real descriptor for seq=twin");
  add_common(c_sb);
  c_sb->callback([&] { run_sieve_bounds(o); });

  CLI::App* c_expr = app.add_subcommand("experiment", "full pipeline at one parameter point");
  c_expr->add_option("--x", o.x, "scale");
  c_expr->add_option("--theta", o.theta, "distance exponent");
  c_expr->add_option("--delta", o.delta, "bump half-width");
  c_expr->add_option("--alpha", o.alpha, "real descriptor");
  c_expr->add_option("--beta", o.beta, "real descriptor");
  c_expr->add_option("--level-D", o.level_D, "weight-table level");
  c_expr->add_option("--z-exp", o.z_exp, "sifting exponent");
  c_expr->add_option("--p1-exp", o.p1_exp, "first prime cut exponent");
  c_expr->add_option("--r2-k-cap", o.r2_k_cap, "frequency truncation for r2 columns");
  c_expr->add_option("--q", o.q_sel, "informational convergent denominator");
  c_expr->add_flag("--theorem-regime", o.theorem_regime, "assert the small-theta regime");
  c_expr->add_option("--witness-out", o.witness_out, "CSV path for the witness list");
  add_common(c_expr);
  c_expr->callback([&] { run_experiment_cmd(o); });

  CLI::App* c_l1 = app.add_subcommand("lemma1-scan", "derived parameter scales across x");
  c_l1->add_option("--theta", o.theta, "exponent in (0, 0.005)");
  c_l1->add_option("--x", o.x_list, "scales to tabulate");
  c_l1->add_option("--delta-exp", o.delta_exp, "exponent tying Delta to K");
  add_common(c_l1);
  c_l1->callback([&] { run_lemma1_scan(o); });

  // last occurrence wins, so config-injected tokens can be overridden
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    for (CLI::Option* opt : sub->get_options())
      if (opt->get_expected_min() == 1 && opt->get_expected_max() == 1)
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // --config FILE: load key=value pairs and splice them in as options right
  // after the subcommand name; explicit flags come later and win
  std::vector<std::string> tokens(argv + 1, argv + argc);
  try {
    std::size_t sub_at = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i)
      if (!tokens[i].empty() && tokens[i][0] != '-') {
        sub_at = i;
        break;
      }
    std::string cfg_path;
    for (std::size_t i = sub_at; i < tokens.size(); ++i) {
      if (tokens[i] == "--config" && i + 1 < tokens.size()) cfg_path = tokens[i + 1];
      else if (tokens[i].rfind("--config=", 0) == 0) cfg_path = tokens[i].substr(9);
    }
    if (!cfg_path.empty() && sub_at < tokens.size()) {
      CLI::App* sub = nullptr;
      for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; }))
        if (s->get_name() == tokens[sub_at]) sub = s;
      if (sub) {
        std::vector<std::string> allowed;
        for (CLI::Option* opt : sub->get_options())
          for (const std::string& nm : opt->get_lnames())
            if (nm != "config") allowed.push_back(nm);
        RunConfig rc = load_config(cfg_path, allowed);
        std::vector<std::string> inj;
        for (auto& [k, v] : rc.kv) inj.push_back("--" + k + "=" + v);
        tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(sub_at) + 1, inj.begin(),
                      inj.end());
      }
    }

    std::vector<const char*> cargv;
    cargv.push_back("mod1lab");
    for (const std::string& t : tokens) cargv.push_back(t.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
