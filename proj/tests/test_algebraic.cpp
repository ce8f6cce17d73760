#include <algorithm>
#include <random>

#include "doctest.h"
#include "fcseries/algebraic.hpp"
#include "fcseries/convergence.hpp"
#include "fcseries/errors.hpp"

using namespace fcs;

namespace {

AlgebraicEquation bring_jerrard(cplx gamma) { return {{gamma, -1.0, 0.0, 0.0, 0.0, 1.0}}; }

double nearest(const std::vector<cplx>& roots, cplx x) {
  double d = std::numeric_limits<double>::infinity();
  for (cplx r : roots) d = std::min(d, std::abs(r - x));
  return d;
}

}  // namespace

TEST_CASE("validation") {
  auto eq = [](std::vector<cplx> c) { return AlgebraicEquation{std::move(c)}; };
  CHECK_THROWS_AS(eq({1.0, 1.0}).validate(), InvalidInput);
  CHECK_THROWS_AS(eq({0.0, 1.0, 1.0}).validate(), InvalidInput);
  CHECK_THROWS_AS(eq({1.0, 1.0, 0.0}).validate(), InvalidInput);
  CHECK_NOTHROW(eq({1.0, 0.0, 1.0}).validate());
  CHECK(eq({1.0, 0.0, 2.0, 0.0, 1.0}).support() == std::vector<unsigned>{0, 2, 4});
}

TEST_CASE("scaling") {
  const AlgebraicEquation eq{{1.0, 2.0, 4.0, 8.0}};
  const ScaledEquation s = scale_equation(eq, {0, 2});
  CHECK(s.slots == std::vector<unsigned>{1, 3});
  CHECK(s.mu[0] == doctest::Approx(0.5));
  CHECK(s.mu[1] == doctest::Approx(1.5));
  CHECK(std::abs(s.b[0] - 1.0) < 1e-15);
  CHECK(std::abs(s.b[1] - 1.0) < 1e-15);
  CHECK(s.mu_exact[1] == frac(3, 2));

  const AlgebraicEquation unit{{cplx(0.3, 0.1), 1.0, 1.0, cplx(-0.2, 0.5)}};
  const ScaledEquation u = scale_equation(unit, {1, 2});
  CHECK(std::abs(u.b[0] - unit.coeffs[0]) < 1e-15);
  CHECK(std::abs(u.b[1] - unit.coeffs[3]) < 1e-15);

  // Brioschi at real C > 0 with pivot (1,3): b_5 = 45C²·(...) = 0.45
  const double C = 1e-3;
  const AlgebraicEquation br{{-C * C, 45.0 * C * C, 0.0, -10.0 * C, 0.0, 1.0}};
  const ScaledEquation b13 = scale_equation(br, {1, 3});
  CHECK(std::abs(b13.b.back()) == doctest::Approx(0.45));
  CHECK_THROWS_AS(scale_equation(eq, {1, 4}), InvalidInput);
}

TEST_CASE("branch phases") {
  const auto one = branch_phases({0, 1});
  CHECK(std::abs(one[0] + 1.0) < 1e-15);
  const auto two = branch_phases({0, 2});
  CHECK(std::abs(two[0] - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(two[1] - cplx(0, -1)) < 1e-15);
  for (cplx w : branch_phases({0, 5})) CHECK(std::abs(std::pow(w, 5) + 1.0) < 1e-14);
}

TEST_CASE("oracle roots and residual") {
  const AlgebraicEquation sq{{-1.0, 0.0, 1.0}};
  const auto r = oracle_roots(sq);
  CHECK(nearest(r, 1.0) < 1e-14);
  CHECK(nearest(r, -1.0) < 1e-14);
  CHECK(residual(sq, 1.0) == 0.0);
  CHECK(residual(sq, 2.0) == doctest::Approx(0.6));

  const auto bj = oracle_roots(bring_jerrard(0.3));
  CHECK(bj.size() == 5);
  for (cplx x : bj) CHECK(residual(bring_jerrard(0.3), x) < 1e-12);
  CHECK(nearest(bj, 0.3025343918303269) < 1e-12);

  const AlgebraicEquation unity{{1.0, 1.0, 1.0}};
  for (cplx x : oracle_roots(unity)) CHECK(std::abs(std::abs(x) - 1.0) < 1e-14);
}

TEST_CASE("single series roots") {
  const RootSeriesResult r = series_root_power(bring_jerrard(0.3), {0, 1}, 0, 1.0, 40);
  CHECK(std::abs(r.value - 0.3025343918303269) < 1e-12);
  CHECK(r.residual < 1e-12);
  CHECK_THROWS_AS(series_root_power(bring_jerrard(0.3), {0, 1}, 1, 1.0, 40), BranchOutOfRange);
}

TEST_CASE("property: branch completeness at T = 0") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int draw = 0; draw < 20; ++draw) {
    AlgebraicEquation eq;
    for (int j = 0; j < 6; ++j) eq.coeffs.emplace_back(g(rng), g(rng));
    const PivotChoice pv{static_cast<unsigned>(draw % 3), 5};
    const ScaledEquation s = scale_equation(eq, pv);
    std::vector<cplx> v;
    for (unsigned l = 0; l < s.branch_count(); ++l) {
      const cplx x = series_root_power(s, eq, l, 1.0, 0).value;
      CHECK(std::abs(std::pow(x, static_cast<int>(pv.q - pv.p)) - (-eq.coeffs[pv.p] / eq.coeffs[pv.q])) <
            1e-12 * std::max(1.0, std::abs(x)));
      v.push_back(x);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) CHECK(std::abs(v[i] - v[j]) > 1e-8);
  }
}

TEST_CASE("property: r = 2 is the square of r = 1") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int draw = 0; draw < 20; ++draw) {
    // x^5 - x + γ with |γ| well inside the (0,1) domain.
    const cplx gamma(0.3 * u(rng), 0.3 * u(rng));
    const AlgebraicEquation eq = bring_jerrard(gamma);
    const RootSeriesResult one = series_root_power(eq, {0, 1}, 0, 1.0, 200);
    const RootSeriesResult two = series_root_power(eq, {0, 1}, 0, 2.0, 200);
    CHECK(std::abs(one.value * one.value - two.value) < 1e-12 + 4.0 * (one.tail_estimate + two.tail_estimate));
  }
}

TEST_CASE("property: convergent roots have small residuals") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 30; ++draw) {
    // Cubic 1 + a1 x + x^2 + a3 x^3 inside the pivot (0,2) simplex.
    const double s = 0.9 * 0.3849 * u(rng);
    const double w = u(rng);
    const AlgebraicEquation eq{{1.0, std::polar(s * w, kTwoPi * u(rng)), 1.0, std::polar(s * (1 - w), kTwoPi * u(rng))}};
    const ScaledEquation sc = scale_equation(eq, {0, 2});
    for (unsigned l = 0; l < 2; ++l) {
      const RootSeriesResult r = series_root_power(sc, eq, l, 1.0, 400);
      CHECK(r.residual < std::max(1e-8, 10.0 * r.tail_estimate));
    }
  }
}

TEST_CASE("solve_all") {
  SUBCASE("one pivot covers the large-gamma regime") {
    const AlgebraicEquation eq = bring_jerrard(0.6);
    const SolveResult s = solve_all(eq);
    REQUIRE(s.roots.size() == 5);
    std::vector<cplx> v;
    for (const auto& r : s.roots) {
      CHECK(r.pivot == PivotChoice{0, 5});
      v.push_back(r.value);
    }
    const RootMatch m = match_roots(v, oracle_roots(eq));
    CHECK(!m.collision);
    CHECK(m.max_error < 1e-8);
  }
  SUBCASE("two pivots split the small-gamma regime") {
    const AlgebraicEquation eq = bring_jerrard(0.4);
    const SolveResult s = solve_all(eq);
    REQUIRE(s.roots.size() == 5);
    std::vector<cplx> v;
    std::size_t from01 = 0, from15 = 0;
    for (const auto& r : s.roots) {
      from01 += r.pivot == PivotChoice{0, 1};
      from15 += r.pivot == PivotChoice{1, 5};
      v.push_back(r.value);
    }
    CHECK(from01 == 1);
    CHECK(from15 == 4);
    CHECK(match_roots(v, oracle_roots(eq)).max_error < 1e-8);
  }
  SUBCASE("the Brioschi gap has no convergent cover") {
    const double C = 2e-4;
    const AlgebraicEquation br{{-C * C, 45.0 * C * C, 0.0, -10.0 * C, 0.0, 1.0}};
    CHECK_THROWS_AS(solve_all(br), NoConvergentCover);
    try {
      solve_all(br);
    } catch (const NoConvergentCover& e) {
      CHECK(e.partial.uncovered > 0);
    }
  }
}

TEST_CASE("match_roots detects collisions") {
  const std::vector<cplx> oracle{1.0, -1.0};
  const std::vector<cplx> same{1.0, 1.0 + 1e-12};
  CHECK(match_roots(same, oracle).collision);
  const std::vector<cplx> good{-1.0, 1.0};
  const RootMatch m = match_roots(good, oracle);
  CHECK(!m.collision);
  CHECK(m.assignment == std::vector<std::size_t>{1, 0});
}
