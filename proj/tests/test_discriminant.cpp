#include "doctest.h"
#include "fcseries/discriminant.hpp"
#include "fcseries/errors.hpp"

using namespace fcs;

namespace {

const MultiPoly& member_poly(const PsiFamily& f, int q_sign, std::vector<int> sigma) {
  const PsiMember* m = f.find(q_sign, sigma);
  REQUIRE(m != nullptr);
  return m->poly;
}

// Printed expressions are compared through their canonical serialization.
std::string canonical(const std::string& printed, const std::vector<std::string>& names) {
  return parse_polynomial(printed, names).to_string();
}

}  // namespace

TEST_CASE("Bareiss determinant of an integer matrix") {
  const std::vector<std::string> none{"x"};
  auto c = [&](int v) { return MultiPoly::constant(none, v); };
  std::vector<std::vector<MultiPoly>> m{{c(0), c(2), c(1)}, {c(3), c(1), c(4)}, {c(5), c(9), c(2)}};
  CHECK(bareiss_determinant(m) == c(0 * (2 - 36) - 2 * (6 - 20) + 1 * (27 - 5)));
}

TEST_CASE("quadratic discriminant conventions") {
  const MultiPoly res = generic_discriminant(2);
  const MultiPoly std_ = generic_discriminant(2, DiscConvention::Standard);
  const auto& names = res.names();
  CHECK(std_ == parse_polynomial("a1^2 - 4 a0 a2", names));
  CHECK(res == parse_polynomial("4 a0 a2 - a1^2", names));
}

TEST_CASE("cubic pivot (0,2) members match the printed forms") {
  const PsiFamily f = build_family({0, 2}, 3u);
  const auto& names = f.plus_general.names();
  CHECK(member_poly(f, 1, {1, 1}).to_string() ==
        canonical("27|a_3|^2 +4|a_1|^3|a_3| +4 -18|a_1||a_3| -|a_1|^2", names));
  CHECK(member_poly(f, 1, {1, -1}).to_string() ==
        canonical("27|a_3|^2 -4|a_1|^3|a_3| +4 +18|a_1||a_3| -|a_1|^2", names));
  CHECK(member_poly(f, -1, {1, 1}).to_string() ==
        canonical("27|a_3|^2 +4|a_1|^3|a_3| -4 +18|a_1||a_3| -|a_1|^2", names));
  CHECK(member_poly(f, -1, {1, -1}).to_string() ==
        canonical("27|a_3|^2 -4|a_1|^3|a_3| -4 -18|a_1||a_3| -|a_1|^2", names));
  // Δ(-|a1|,|a3|) = Δ(|a1|,-|a3|)
  CHECK(f.find(1, std::vector<int>{-1, 1}) == f.find(1, std::vector<int>{1, -1}));
  CHECK(f.plus.size() == 2);
  CHECK(f.minus.size() == 2);
}

TEST_CASE("quartic pivot (2,4) members") {
  const PsiFamily f = build_family({2, 4}, std::vector<unsigned>{0, 1, 2, 4});
  const auto& names = f.plus_general.names();
  CHECK(member_poly(f, -1, {-1, 1}).to_string() ==
        canonical("16|a_0|(1-4|a_0|)^2 +4(1-36|a_0|)|a_1|^2 - 27|a_1|^4", names));
  CHECK(member_poly(f, 1, {1, 1}).to_string() ==
        canonical("-27|a_1|^4 -4(1-36|a_0|)|a_1|^2 +16|a_0|(1-4|a_0|)^2", names));
  CHECK(member_poly(f, -1, {1, 1}).to_string() ==
        canonical("-27|a_1|^4 +4(1+36|a_0|)|a_1|^2 -16|a_0|(1+4|a_0|)^2", names));
  // The Sylvester result; its constant-in-a_1 part is -16|a_0|(1+4|a_0|)^2.
  CHECK(member_poly(f, 1, {-1, 1}).to_string() ==
        canonical("-27|a_1|^4 -4(1+36|a_0|)|a_1|^2 -16|a_0|(1+4|a_0|)^2", names));
  std::size_t distinct = f.plus.size() + f.minus.size();
  CHECK(distinct == 4);
  for (const PsiMember* m : f.all()) CHECK(m->poly.constant_term() == 0);
}

TEST_CASE("quartic pivot (1,2) has a common factor") {
  const PsiFamily f = build_family({1, 2}, std::vector<unsigned>{0, 1, 2, 4});
  const auto& names = f.plus_general.names();
  const MultiPoly& m = member_poly(f, 1, {1, 1});
  CHECK(m.to_string() ==
        canonical("256 |a_0|^3 |a_4|^2 -128 |a_0|^2 |a_4| +144 |a_0| |a_4| +16 |a_0| -27 |a_4| -4", names));
  CHECK(m.constant_term() == -4);
  CHECK(member_poly(f, 1, {1, -1}).to_string() ==
        canonical("256 |a_0|^3 |a_4|^2 +128 |a_0|^2 |a_4| -144 |a_0| |a_4| +16 |a_0| +27 |a_4| -4", names));
  CHECK(member_poly(f, 1, {-1, 1}).to_string() ==
        canonical("-256 |a_0|^3 |a_4|^2 -128 |a_0|^2 |a_4| -144 |a_0| |a_4| -16 |a_0| -27 |a_4| -4", names));
  CHECK(member_poly(f, 1, {-1, -1}).to_string() ==
        canonical("-256 |a_0|^3 |a_4|^2 +128 |a_0|^2 |a_4| +144 |a_0| |a_4| -16 |a_0| +27 |a_4| -4", names));
  // Reduction removed exactly one power of |a_4|.
  const unsigned e4 = MultiPoly::exponent(f.plus_content, 1);
  CHECK(e4 == 1);
}

TEST_CASE("symbolic discriminant with fixed pivots") {
  const MultiPoly d = discriminant_symbolic(2, {{2, 1}});
  CHECK(d == parse_polynomial("4 b0 - b1^2", d.names()));
}

TEST_CASE("parity") {
  CHECK(parity_check({0, 1}, build_family({0, 1}, 3u)) == Parity::Identical);
  CHECK(parity_check({0, 2}, build_family({0, 2}, 3u)) == Parity::Disjoint);
  CHECK(parity_check({2, 4}, build_family({2, 4}, std::vector<unsigned>{0, 1, 2, 4})) == Parity::Disjoint);
}

TEST_CASE("property: parity agrees with q - p for every pivot up to degree 6") {
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned p = 0; p < n; ++p)
      for (unsigned q = p + 1; q <= n; ++q) {
        const PsiFamily f = build_family({p, q}, n);
        if (f.variable_count() == 0) continue;
        CHECK_NOTHROW(parity_check({p, q}, f));
      }
}

TEST_CASE("origin classification") {
  const PsiFamily c01 = build_family({0, 1}, 3u);
  CHECK(c01.find(1, std::vector<int>{1, -1})->origin.cls == OriginClass::LocalMax);
  CHECK(c01.find(1, std::vector<int>{1, 1})->origin.cls == OriginClass::Saddle);
  const PsiFamily q24 = build_family({2, 4}, std::vector<unsigned>{0, 1, 2, 4});
  CHECK(q24.find(-1, std::vector<int>{-1, 1})->origin.cls == OriginClass::LocalMin);
  const PsiFamily c02 = build_family({0, 2}, 3u);
  CHECK(c02.find(1, std::vector<int>{1, 1})->origin.cls == OriginClass::NonzeroConstant);
  CHECK(c02.find(1, std::vector<int>{1, 1})->origin.value == 4);
  CHECK(c02.find(-1, std::vector<int>{1, 1})->origin.value == -4);
}

TEST_CASE("property: homogeneity of the generic discriminant") {
  for (unsigned n = 2; n <= 5; ++n) {
    const MultiPoly d = generic_discriminant(n);
    for (const auto& [mono, c] : d.terms()) {
      unsigned deg = 0, weight = 0;
      for (unsigned j = 0; j <= n; ++j) {
        deg += MultiPoly::exponent(mono, j);
        weight += j * MultiPoly::exponent(mono, j);
      }
      CHECK(deg == 2 * n - 2);
      CHECK(weight == n * (n - 1));
    }
  }
}

TEST_CASE("property: reduced members are content-free") {
  for (unsigned n = 3; n <= 5; ++n)
    for (unsigned p = 0; p < n; ++p)
      for (unsigned q = p + 1; q <= n; ++q) {
        const PsiFamily f = build_family({p, q}, n);
        for (const PsiMember* m : f.all()) CHECK(m->poly.monomial_content() == 0);
      }
}

TEST_CASE("discriminant of P(x^m)") {
  for (auto [n, m] : {std::pair{2u, 2u}, std::pair{3u, 2u}, std::pair{2u, 3u}, std::pair{3u, 1u}}) {
    const auto r = power_substitution_discriminant(n, m);
    CHECK(r.holds);
    CHECK(r.lhs == r.rhs);
  }
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(generic_discriminant(7), DegreeOutOfRange);
}
