#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcseries/multipoly.hpp"
#include "fcseries/pivot.hpp"

namespace fcs {

enum class DiscConvention {
  ResultantOverLeading,  // Res(P, P')/a_n; reproduces the printed cubic and quartic families
  Standard,              // (-1)^{n(n-1)/2} Res(P, P')/a_n
};

// Fraction-free (Bareiss) determinant with row pivoting on zero polynomials.
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m);

// Discriminant of a_0 + a_1 x + ... + a_n x^n with polynomial coefficients.
MultiPoly discriminant(std::span<const MultiPoly> coeffs, DiscConvention conv = DiscConvention::ResultantOverLeading);

// Coefficient list with variables a0..an.
std::vector<MultiPoly> generic_coefficients(unsigned n);
MultiPoly generic_discriminant(unsigned n, DiscConvention conv = DiscConvention::ResultantOverLeading);

// Slots listed in `fixed` carry the given integer; the rest become variables b_j.
MultiPoly discriminant_symbolic(unsigned n, const std::map<unsigned, int>& fixed);

enum class OriginClass { NonzeroConstant, LocalMax, LocalMin, Saddle };

struct OriginInfo {
  OriginClass cls = OriginClass::Saddle;
  Integer value = 0;
  // Sign of the member just off the origin inside the positive orthant (0 for Saddle).
  int near_sign() const;
};

OriginInfo origin_classify(const MultiPoly& member);
std::string to_string(OriginClass c);

struct PsiMember {
  int q_sign = 1;                          // +1 for the Ψ⁺ family, -1 for Ψ⁻
  std::vector<std::vector<int>> sigmas;    // every tuple producing this polynomial, first is canonical
  MultiPoly poly;                          // reduced, in amplitude variables
  OriginInfo origin;
  std::string id() const;
};

struct PsiFamily {
  PivotChoice pivot;
  unsigned degree = 0;
  std::vector<unsigned> support;
  std::vector<unsigned> slots;   // free slots, variable i is |b_{slots[i]}|
  std::vector<Rational> mu;      // exponent per free slot
  MultiPoly plus_general;        // reduced, signed variables
  MultiPoly minus_general;
  MultiPoly::Monomial plus_content = 0;
  MultiPoly::Monomial minus_content = 0;
  std::vector<PsiMember> plus;
  std::vector<PsiMember> minus;
  bool reduced = true;

  const PsiMember* find(int q_sign, std::span<const int> sigma) const;
  std::vector<const PsiMember*> all() const;
  std::size_t variable_count() const { return slots.size(); }
};

PsiFamily build_family(const PivotChoice& pivot, unsigned n);
PsiFamily build_family(const PivotChoice& pivot, const std::vector<unsigned>& support);

enum class Parity { Identical, Disjoint };
// Throws InternalInconsistency when the constructive comparison contradicts the parity of q - p.
Parity parity_check(const PivotChoice& pivot, const PsiFamily& family);
// Constructive comparison only: Identical, Disjoint, or nullopt when the sets partially overlap.
std::optional<Parity> compare_families(const PsiFamily& family);

struct PowerSubstitutionCheck {
  MultiPoly lhs;
  MultiPoly rhs;
  bool holds = false;
};
// Δ(P(x^m)) against (-1)^{nm(m-1)/2} m^{mn} (a0 an)^{m-1} Δ(P)^m, standard convention.
PowerSubstitutionCheck power_substitution_discriminant(unsigned n, unsigned m);

}  // namespace fcs
