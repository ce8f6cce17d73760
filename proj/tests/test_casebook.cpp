#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fcseries/casebook.hpp"

using namespace fcs;

TEST_CASE("Bring-Jerrard roots in both regimes") {
  for (cplx g : {cplx(2.0), cplx(0.2), cplx(-0.9), cplx(0.3, 0.4)}) {
    const CaseRoots c = bring_jerrard_roots(g, 300);
    CHECK(c.roots.size() == 5);
    CHECK(c.max_error < 1e-10);
  }
  CHECK(bring_jerrard_threshold() == doctest::Approx(4.0 / std::pow(5.0, 1.25)).epsilon(1e-15));
}

TEST_CASE("x^5 - x + 0.3 has a real root near 0.30253") {
  const CaseRoots c = bring_jerrard_roots(0.3, 300);
  const auto it = std::find_if(c.roots.begin(), c.roots.end(), [](const RootSeriesResult& r) {
    return std::abs(r.value.imag()) < 1e-12 && std::abs(r.value.real() - 0.3) < 0.01;
  });
  REQUIRE(it != c.roots.end());
  CHECK(it->value.real() == doctest::Approx(0.3025343918303269).epsilon(1e-12));
}

TEST_CASE("trinomials against the oracle") {
  const TrinomialSpec specs[] = {{2, 3, 1.0, 0.1}, {1, 4, -0.5, 0.02}, {3, 2, cplx(0.2, 1.0), 0.05}};
  for (const auto& s : specs) {
    const TrinomialCase c = trinomial_roots(s, 400);
    CHECK(c.roots.size() == s.m + s.n);
    CHECK(c.max_error < 1e-9);
  }
  const TrinomialSpec s{2, 3, 1.0, 0.1};
  CHECK(s.threshold() == doctest::Approx(4.0 * 27.0 / 3125.0));
  CHECK(s.amplitude_ratio() == doctest::Approx(0.01));
}

TEST_CASE("Lambert series") {
  for (unsigned m : {2u, 3u})
    for (unsigned n : {1u, 2u}) {
      const TermCheck c = lambert_check(m, n);
      CHECK(c.exact_match);
    }
  CHECK(lambert_radius(2) == doctest::Approx(0.25));
}

TEST_CASE("Euler's series") {
  CHECK(euler_check(3, 1, 1).exact_match);
  CHECK(euler_check(frac(5, 2), frac(1, 3), 2).exact_match);
  CHECK(euler_printed_check(3, 1, 1).exact_match);
}

TEST_CASE("Ramanujan's series") {
  for (double n : {1.0, 0.0}) {
    const RamanujanCheck r = ramanujan_check(3.0, 1.0, n, 0.05);
    CHECK(r.exact.exact_match);
    CHECK(r.gamma.max_deviation < 1e-10);
    CHECK(r.fixed_point_residual < 1e-10);
  }
}

TEST_CASE("cubic domain table") {
  const CubicTable t = cubic_domain_table();
  CHECK(t.rows.size() == 6);
  for (const auto& row : t.rows) CHECK(row.matches);
  CHECK(t.d02_a1_axis == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.d02_a3_axis == doctest::Approx(std::sqrt(4.0 / 27.0)).epsilon(1e-12));
  CHECK(t.original_d02_rejects_origin);
}

TEST_CASE("principal quintic domains") {
  const QuinticTable q = principal_quintic_domains();
  CHECK(!q.rows.empty());
  CHECK(q.origin_inside_all);
}

TEST_CASE("Brioschi thresholds and coverage") {
  const BrioschiThresholds th = brioschi_thresholds();
  CHECK(th.lower == doctest::Approx(th.exact_lower).epsilon(1e-12));
  CHECK(th.upper == doctest::Approx(th.exact_upper).epsilon(1e-12));
  CHECK(th.exact_lower == doctest::Approx((-17.0 + 13.0 * std::sqrt(2.0)) / 42336.0));
  CHECK(brioschi_analysis(1e-3).covered);
  CHECK(brioschi_analysis(1e-5).covered);
  const BrioschiVerdict gap = brioschi_analysis(2e-4);
  CHECK(!gap.covered);
  CHECK(gap.roots.size() < 5);
}

TEST_CASE("identity suite") {
  IdentityOptions opts;
  opts.draws = 20;
  for (const auto& r : identity_suite(opts)) {
    INFO(r.name << ": " << r.note);
    CHECK(r.cases > 0);
    CHECK(r.passed());
  }
}

TEST_CASE("Puiseux terms of the cubic (0,1) root") {
  const auto terms = puiseux_terms({0, 1, 3}, {0, 1}, 0, 1, 2);
  REQUIRE(terms.size() == 3);
  // x = -a0/a1 + a0^3 a3/a1^4 - 3 a0^5 a3^2/a1^7 + ...
  const Rational coeff[] = {1, 1, 3}, turns[] = {1, 4, 7};
  const std::vector<Rational> exps[] = {{1, -1, 0, 0}, {3, -4, 0, 1}, {5, -7, 0, 2}};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(terms[i].coefficient == coeff[i]);
    CHECK(terms[i].phase_turns == turns[i]);
    CHECK(terms[i].exponents == exps[i]);
    Rational degree = 0;
    for (const auto& e : terms[i].exponents) degree += e;
    CHECK(degree == 0);
  }
}

TEST_CASE("Sturmfels checks") {
  const SturmfelsReport s = sturmfels_checks();
  CHECK(s.coefficients_match);
  CHECK(s.quintic_05_leading_match);
  CHECK(!s.printed_05_a2_exponent_consistent);
  CHECK(s.M_ratio_limit_crosscheck == doctest::Approx(s.M.get_d()));
}
