#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mod1/bump.hpp"
#include "mod1/errors.hpp"

using namespace mod1;

TEST_CASE("bump parameters satisfy the defining identities", "[bump]") {
  for (auto [delta, x] : {std::pair{0.01, 1e6}, {0.05, 1e3}, {0.2, 3.0}, {0.003, 1e5}}) {
    BumpSpec s = build_bump(delta, x);
    CAPTURE(delta, x);
    double r = static_cast<double>(s.r);
    CHECK(s.r == static_cast<int>(std::ceil(std::log(x))));
    // support radius d2 + r w / 2 = delta, plateau value c(0)/(2 d2) = h
    CHECK(s.delta2 + r * s.w / 2 == Catch::Approx(delta).epsilon(1e-14));
    CHECK(s.h_scale * 2 * s.delta2 == Catch::Approx(delta).epsilon(1e-14));
    CHECK(s.h_scale < 1.0);
    CHECK(r * s.w / 2 < s.delta2);  // kernel narrower than the box
    CHECK(s.c[0] == delta);        // exact by construction
    for (long long k = 1; k <= s.cutoff_K; ++k)
      CHECK(std::fabs(s.c[static_cast<std::size_t>(k)]) <= delta);
  }
}

TEST_CASE("chi has plateau, support, symmetry, and range", "[bump]") {
  BumpSpec s = build_bump(0.01, 1e6);
  double plateau_r = s.delta / (2 * s.r);

  CHECK(bump_eval_direct(s, 0.0) == s.h_scale);
  CHECK(bump_eval_direct(s, plateau_r * 0.999) == s.h_scale);
  CHECK(bump_eval_direct(s, -plateau_r * 0.999) == s.h_scale);

  CHECK(bump_eval_direct(s, s.delta) == 0.0);
  CHECK(bump_eval_direct(s, -s.delta) == 0.0);
  CHECK(bump_eval_direct(s, 0.5) == 0.0);
  CHECK(bump_eval_direct(s, 0.25) == 0.0);

  // strictly positive inside the support, even hairline from the edge
  CHECK(bump_eval_direct(s, s.delta * 0.999999) > 0.0);
  CHECK(bump_eval_direct(s, -s.delta * 0.999999) > 0.0);

  for (int i = 0; i <= 200; ++i) {
    double t = -s.delta + 2 * s.delta * i / 200.0 + 1e-9;
    if (t >= s.delta) break;
    double v = bump_eval_direct(s, t);
    CHECK(v > 0.0);
    CHECK(v <= s.h_scale);
    CHECK(v == Catch::Approx(bump_eval_direct(s, -t)).margin(1e-16));
  }

  // periodization: same value one period over
  CHECK(bump_eval_direct(s, 1.0 + 0.003) == Catch::Approx(bump_eval_direct(s, 0.003)));
  CHECK(bump_eval_direct(s, -1.0 + 0.003) == Catch::Approx(bump_eval_direct(s, 0.003)));
}

TEST_CASE("Fourier partial sums land within the tail envelope", "[bump]") {
  BumpSpec s = build_bump(0.05, 1e3);
  double tail = bump_tail_bound(s, s.cutoff_K);
  double tol = tail + 1e-10;  // envelope plus summation roundoff
  for (double t : {0.0, 0.001, 0.01, 0.049, 0.05, 0.07, 0.25, 0.5, 0.93}) {
    double direct = bump_eval_direct(s, t);
    double fourier = bump_eval_fourier(s, t, s.cutoff_K);
    CHECK(std::fabs(direct - fourier) <= tol);
  }
}

TEST_CASE("tail envelope beats 1/x at the working scale", "[bump]") {
  BumpSpec s = build_bump(0.01, 1e6);
  CHECK(bump_tail_bound(s, s.cutoff_K) <= 1e-6);
  CHECK_THROWS_AS(bump_tail_bound(s, 0), ValidationError);
  BumpSpec narrow = build_bump(0.05, 1e3);
  // envelope needs pi w K > 1
  CHECK_THROWS_AS(bump_tail_bound(narrow, 1), ValidationError);
}

TEST_CASE("mean value over a period recovers c(0)", "[bump]") {
  BumpSpec s = build_bump(0.05, 1e3);
  int n = 20000;
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += bump_eval_direct(s, (i + 0.5) / n);
  CHECK(sum / n == Catch::Approx(s.delta).epsilon(1e-6));
}

TEST_CASE("bump validation and serialization", "[bump]") {
  CHECK_THROWS_AS(build_bump(0.7, 1e6), ValidationError);
  CHECK_THROWS_AS(build_bump(0.0, 1e6), ValidationError);
  CHECK_THROWS_AS(build_bump(0.01, 2.0), ValidationError);
  CHECK_THROWS_AS(build_bump(1e-9, 1e6), BudgetError);  // coefficient table too large

  BumpSpec s = build_bump(0.25, 10.0);
  std::string csv = bump_csv(s);
  CHECK(csv.rfind("k,c_k\n0,0.25\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == static_cast<std::size_t>(s.cutoff_K) + 2);
}
