#include <algorithm>
#include <array>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fcseries/convergence.hpp"
#include "fcseries/domain.hpp"
#include "fcseries/errors.hpp"

using namespace fcs;

namespace {

const std::vector<unsigned> kQuartic{0, 1, 2, 4};

std::vector<std::string> ids(const std::vector<const PsiMember*>& ms) {
  std::vector<std::string> out;
  for (const auto* m : ms) out.push_back(m->id());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace

TEST_CASE("active members") {
  const PsiFamily c01 = build_family({0, 1}, 3u);
  const auto a01 = active_members(c01);
  CHECK(a01.size() == 2);
  for (const auto* m : a01) CHECK(m->origin.cls == OriginClass::LocalMax);

  const PsiFamily q24 = build_family({2, 4}, kQuartic);
  CHECK(ids(active_members(q24)) == std::vector<std::string>{"psi-[-+]"});

  const PsiFamily q12 = build_family({1, 2}, kQuartic);
  CHECK(active_members(q12).size() == 3);
  const auto bind = binding_conditions(q12);
  REQUIRE(bind.size() == 2);
  std::vector<std::string> bound;
  for (const auto& b : bind) {
    bound.push_back(b.member->id());
    CHECK(b.sign < 0);
  }
  std::sort(bound.begin(), bound.end());
  CHECK(bound == std::vector<std::string>{"psi+[++]", "psi+[--]"});
}

TEST_CASE("membership examples") {
  const PsiFamily f = build_family({0, 2}, 3u);
  const std::array<double, 2> in{0.0, 0.3}, out{0.0, 0.5}, origin{0.0, 0.0};
  CHECK(member(in, f).inside);
  const DomainVerdict v = member(out, f);
  CHECK(!v.inside);
  REQUIRE(v.binding);
  CHECK(v.binding->member_id.rfind("psi-", 0) == 0);
  CHECK(v.binding->scale == doctest::Approx(std::sqrt(4.0 / 27.0) / 0.5).epsilon(1e-9));
  CHECK(member(origin, f).inside);
  const std::array<double, 1> wrong{0.1};
  CHECK_THROWS_AS(member(wrong, f), DimensionMismatch);
}

TEST_CASE("boundary along rays") {
  const PsiFamily c02 = build_family({0, 2}, 3u);
  const std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};
  CHECK(boundary_on_ray(e1, c02) == doctest::Approx(2.0).epsilon(1e-12));
  const PsiFamily q24 = build_family({2, 4}, kQuartic);
  CHECK(boundary_on_ray(e1, q24) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(boundary_on_ray(e2, q24) == doctest::Approx(std::sqrt(4.0 / 27.0)).epsilon(1e-12));
  const std::array<double, 2> zero{0.0, 0.0};
  CHECK(std::isinf(boundary_on_ray(zero, q24)));
  // The level set really vanishes at the reported scale.
  const RayCrossing c = first_crossing(e2, q24);
  REQUIRE(c.member);
  const std::array<double, 2> at{0.0, c.scale};
  CHECK(std::abs(c.member->poly.evaluate(at)) < 1e-12);
}

TEST_CASE("property: axis slices reproduce the necessary box") {
  for (unsigned n = 2; n <= 5; ++n)
    for (unsigned p = 0; p < n; ++p)
      for (unsigned q = p + 1; q <= n; ++q) {
        const PsiFamily f = build_family({p, q}, n);
        const std::size_t k = f.variable_count();
        if (k == 0) continue;
        const auto box = necessary_box(doubles(f.mu)).per_coordinate_max;
        for (std::size_t j = 0; j < k; ++j) {
          std::vector<double> e(k, 0.0);
          e[j] = 1.0;
          CHECK(boundary_on_ray(e, f) == doctest::Approx(box[j]).epsilon(1e-9));
        }
      }
}

TEST_CASE("property: simplex inside, box outside") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto [pv, support] : {std::pair{PivotChoice{0, 2}, std::vector<unsigned>{0, 1, 2, 3}},
                             std::pair{PivotChoice{1, 3}, std::vector<unsigned>{0, 1, 2, 3}},
                             std::pair{PivotChoice{2, 4}, kQuartic}}) {
    const PsiFamily f = build_family(pv, support);
    const auto mu = doubles(f.mu);
    const double simplex = sufficient_simplex(mu).radius;
    const auto box = necessary_box(mu).per_coordinate_max;
    for (int i = 0; i < 40; ++i) {
      std::vector<double> x(f.variable_count());
      double total = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = 1.2 * box[j] * u(rng);
        total += x[j];
      }
      const bool inside = member(x, f).inside;
      if (total <= simplex) CHECK(inside);
      if (inside)
        for (std::size_t j = 0; j < x.size(); ++j) CHECK(x[j] <= box[j] * (1 + 1e-9));
    }
  }
}

TEST_CASE("quartic sign pattern along (a, a/2)") {
  const PsiFamily q24 = build_family({2, 4}, kQuartic);
  const MultiPoly& psi = q24.find(-1, std::vector<int>{-1, 1})->poly;
  const Rational dir[] = {1, frac(1, 2)};
  const auto line = psi.restrict_to_ray(dir);
  auto value = [&](double a) {
    const std::array<double, 2> x{a, a / 2};
    return psi.evaluate(x);
  };
  CHECK(line[0] == 0);
  CHECK(value(0.01) > 0);
  CHECK(value(0.2) < 0);
  CHECK(value(0.5) > 0);
}

TEST_CASE("a component not connected to the origin is excluded") {
  const PsiFamily q24 = build_family({2, 4}, kQuartic);
  const MultiPoly& psi = q24.find(-1, std::vector<int>{-1, 1})->poly;
  // Beyond both crossings of the ray the member is positive again, yet the point is outside.
  const std::array<double, 2> far{0.5, 0.25};
  CHECK(psi.evaluate(far) > 0);
  CHECK(!member(far, q24).inside);
}

TEST_CASE("log-convexity probe") {
  const PsiFamily c02 = build_family({0, 2}, 3u);
  const std::array<double, 2> a{0.5, 0.05}, b{0.1, 0.2};
  CHECK(log_convexity_probe(a, b, c02));
  CHECK(log_convexity_probe(a, a, c02));
  // Near the two vertices of the quartic domain the chord midpoint leaves it.
  const PsiFamily q24 = build_family({2, 4}, kQuartic);
  const std::array<double, 2> v0{0.249, 1e-4}, v1{1e-4, 0.384};
  const std::array<double, 2> mid{(v0[0] + v1[0]) / 2, (v0[1] + v1[1]) / 2};
  CHECK(member(v0, q24).inside);
  CHECK(member(v1, q24).inside);
  CHECK(!member(mid, q24).inside);
  CHECK(log_convexity_probe(v0, v1, q24));
  const std::array<double, 2> zero{0.0, 0.1};
  CHECK_THROWS_AS(log_convexity_probe(zero, v1, q24), InvalidInput);
}

TEST_CASE("level set tracing") {
  const PsiFamily q12 = build_family({1, 2}, kQuartic);
  const MultiPoly& upper = q12.find(1, std::vector<int>{-1, -1})->poly;
  const auto lines = trace_level_set(upper, 0, 1, {0.0, 0.3, 0.0, 0.2}, 80);
  REQUIRE(!lines.empty());
  for (const auto& l : lines)
    for (const auto& pt : l.points) {
      const std::array<double, 2> x{pt[0], pt[1]};
      CHECK(std::abs(upper.evaluate(x)) < 5e-2);
    }
  // The member is -4 at the origin and stays negative on a small window.
  CHECK(trace_level_set(upper, 0, 1, {0.0, 0.01, 0.0, 0.01}, 20).empty());
  std::ostringstream csv;
  write_trace_csv(csv, {{"psi+[--]", lines}});
  CHECK(csv.str().rfind("# psi level set trace\nmember_id,polyline_id,x,y\npsi+[--],0,", 0) == 0);
  CHECK(csv.str().find('\r') == std::string::npos);
}

TEST_CASE("empirical convergence") {
  auto bj = [](double g) { return AlgebraicEquation{{g, -1.0, 0.0, 0.0, 0.0, 1.0}}; };
  CHECK(empirical_convergence(bj(0.6), {0, 5}, 0).verdict == Convergence::Converges);
  CHECK(empirical_convergence(bj(0.4), {0, 5}, 0).verdict == Convergence::Diverges);
  const auto at = empirical_convergence(bj(4.0 / std::pow(5.0, 1.25)), {0, 5}, 0).verdict;
  CHECK(at != Convergence::Diverges);
}

TEST_CASE("Brioschi pivot (0,3) isolated point is outside") {
  const double C = 1.0 / 1728.0;
  const AlgebraicEquation br{{-C * C, 45.0 * C * C, 0.0, -10.0 * C, 0.0, 1.0}};
  const std::vector<unsigned> support{0, 1, 3, 5};
  const PsiFamily f = build_family({0, 3}, support);
  const ScaledEquation s = scale_equation(br, {0, 3});
  CHECK(!member(s.amplitudes(), f).inside);
}
