#include <cmath>
#include <random>

#include "doctest.h"
#include "fcseries/convergence.hpp"
#include "fcseries/errors.hpp"

using namespace fcs;

TEST_CASE("ratio_limit") {
  CHECK(ratio_limit(2.0) == doctest::Approx(4.0));
  CHECK(ratio_limit(0.5) == doctest::Approx(0.5));
  CHECK(ratio_limit(0.2) == doctest::Approx(std::pow(4.0, 0.8) / 5.0));
  CHECK_THROWS_AS(ratio_limit(0.0), DegenerateExponent);
  CHECK_THROWS_AS(ratio_limit(1.0), DegenerateExponent);
}

TEST_CASE("ratio_limit is the limit of consecutive ratios") {
  for (const Rational& mu : {frac(-3, 2), frac(2, 1), frac(13, 5), frac(7, 2)}) {
    const Rational r = fc_number_exact(mu, 1, 1004) / fc_number_exact(mu, 1, 1003);
    CHECK(std::abs(r.get_d()) == doctest::Approx(ratio_limit(mu.get_d())).epsilon(5e-3));
  }
}

TEST_CASE("asymptotic form approaches the exact numbers") {
  // Leading-order form; the relative error decays like 1/t.
  const double e40 = asymptotic_fc({2.0, 1.0}, 40) / fc_number_exact(2, 1, 40).get_d() - 1.0;
  const double e400 = asymptotic_fc({2.0, 1.0}, 400) / fc_number_exact(2, 1, 400).get_d() - 1.0;
  CHECK(std::abs(e40) < 0.03);
  CHECK(std::abs(e400) < 0.003);
  CHECK(std::abs(e400) < std::abs(e40) / 5.0);
  const double r100 = asymptotic_fc({3.0, 2.0}, 100) / fc_number_exact(3, 2, 100).get_d();
  CHECK(r100 >= 0.98);
  CHECK(r100 <= 1.02);
}

TEST_CASE("necessary box") {
  const double mu[] = {0.5, 1.5};
  const BoxBound b = necessary_box(mu);
  CHECK(b.per_coordinate_max[0] == doctest::Approx(2.0));
  CHECK(b.per_coordinate_max[1] == doctest::Approx(2.0 * std::pow(3.0, -1.5)));
  const double two[] = {2.0};
  CHECK(necessary_box(two).per_coordinate_max[0] == doctest::Approx(0.25));
  const double five[] = {5.0};
  CHECK(necessary_box(five).per_coordinate_max[0] == doctest::Approx(256.0 / 3125.0));
}

TEST_CASE("sufficient simplex") {
  const double mu[] = {0.5, 1.5};
  const SimplexBound s = sufficient_simplex(mu);
  CHECK(s.radius == doctest::Approx(0.3849001794597505));
  CHECK(s.mu_star == 1.5);
  const double two[] = {2.0};
  CHECK(sufficient_simplex(two).radius == doctest::Approx(0.25));
  const double sym[] = {1.0 / 3.0, 2.0 / 3.0};
  CHECK(sufficient_simplex(sym).radius == doctest::Approx(1.0 / ratio_limit(1.0 / 3.0)));
  CHECK(sufficient_simplex(sym).mu_star == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("trinomial radius") {
  CHECK(trinomial_radius(5.0) == doctest::Approx(256.0 / 3125.0));
  CHECK(trinomial_radius(-0.25) == doctest::Approx(4.0 / std::pow(5.0, 1.25)));
  CHECK(trinomial_radius(0.5) == doctest::Approx(2.0));
}

TEST_CASE("Mellin bound") {
  const double mu[] = {0.5, 1.5};
  CHECK(mellin_bound(mu) == doctest::Approx(0.19245008972987526));
  // One parameter: the 1/p prefactor is 1.
  const double one[] = {3.0};
  CHECK(mellin_bound(one) == doctest::Approx(trinomial_radius(3.0)));
  const double four[] = {0.2, 0.4, 0.6, 0.8};
  CHECK(mellin_bound(four) == doctest::Approx(0.25 * std::min(trinomial_radius(0.2), trinomial_radius(0.8))));
}

TEST_CASE("measure bounds") {
  const double two[] = {2.0};
  CHECK(measure_bounds(two).lower == doctest::Approx(0.25));
  CHECK(measure_bounds(two).upper == doctest::Approx(0.25));
  const double mu[] = {0.5, 1.5};
  CHECK(measure_bounds(mu).lower == doctest::Approx(0.5 * 0.3849001794597505 * 0.3849001794597505));
  CHECK(measure_bounds(mu).upper == doctest::Approx(2.0 * 0.3849001794597505));
  const double dup[] = {2.0, 2.0};
  CHECK(measure_bounds(dup).lower == doctest::Approx(0.03125));
  CHECK(measure_bounds(dup).upper == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("property: Mellin <= simplex <= box") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 4.0);
  for (int draw = 0; draw < 200; ++draw) {
    std::vector<double> mu(1 + draw % 4);
    for (auto& m : mu) {
      do m = u(rng);
      while (std::abs(m) < 1e-3 || std::abs(m - 1.0) < 1e-3);
    }
    const double simplex = sufficient_simplex(mu).radius;
    CHECK(mellin_bound(mu) <= simplex * (1 + 1e-12));
    for (double b : necessary_box(mu).per_coordinate_max) CHECK(simplex <= b * (1 + 1e-12));
  }
}

TEST_CASE("growth exponent") {
  const double mu[] = {0.5, 1.5};
  const double box[] = {2.0, 0.0}, box3[] = {0.0, 2.0 * std::pow(3.0, -1.5)};
  CHECK(growth_exponent(box, mu) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(std::abs(growth_exponent(box3, mu)) < 1e-12);
  const double zero[] = {0.0, 0.0};
  CHECK(growth_exponent(zero, mu) == -std::numeric_limits<double>::infinity());
  // Homogeneity along rays.
  const double p[] = {0.3, 0.1}, p2[] = {0.6, 0.2};
  CHECK(growth_exponent(p2, mu) == doctest::Approx(growth_exponent(p, mu) + std::log(2.0)).epsilon(1e-10));
  // Between the simplex and box bounds on every ray.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double simplex = sufficient_simplex(mu).radius;
  for (int i = 0; i < 50; ++i) {
    const double d[] = {u(rng), u(rng)};
    const double lambda = std::exp(-growth_exponent(d, mu));
    CHECK(lambda * (d[0] + d[1]) >= simplex * (1 - 1e-9));
    CHECK(lambda * d[0] <= 2.0 * (1 + 1e-9));
    CHECK(lambda * d[1] <= 2.0 * std::pow(3.0, -1.5) * (1 + 1e-9));
  }
  const double bad[] = {-1.0, 0.1};
  CHECK_THROWS_AS(growth_exponent(bad, mu), InvalidInput);
}
