#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fcseries/algebraic.hpp"
#include "fcseries/discriminant.hpp"
#include "fcseries/domain.hpp"

namespace fcs {

// ---- quintic and trinomial normal forms ----

// 4/5^{5/4}
double bring_jerrard_threshold();

struct CaseRoots {
  std::string regime;
  std::vector<RootSeriesResult> roots;
  std::vector<cplx> oracle;
  double max_error = 0.0;  // series vs oracle, relative to max(1, |root|)
  bool near_threshold = false;
};

// x^5 - x + γ = 0. Large |γ| uses pivot (0,5); small uses (0,1) and (1,5).
CaseRoots bring_jerrard_roots(cplx gamma, std::size_t T);

struct TrinomialSpec {
  unsigned m = 1;
  unsigned n = 1;
  cplx a;
  cplx b;
  AlgebraicEquation equation() const;  // x^{m+n} + a x^n + b
  double amplitude_ratio() const;      // |b|^m / |a|^{m+n}
  double threshold() const;            // m^m n^n / (m+n)^{m+n}
};

struct TrinomialCase : CaseRoots {
  // Largest |term_t| difference between the q<p series and its p<q counterpart.
  double reversed_series_deviation = 0.0;
  bool reversed_series_exact = false;
};
TrinomialCase trinomial_roots(const TrinomialSpec& spec, std::size_t T, unsigned compare_terms = 12);

// ---- Lambert, Euler, Ramanujan ----

struct TermCheck {
  unsigned terms = 0;
  bool exact_match = false;
  double max_deviation = 0.0;
  bool printed_match = true;  // the form as printed, where it differs from the checked one
  std::string note;
};

// x = q + x^m: coefficients of x^n from the fixed point against q^n B(m; n; q^{m-1}).
TermCheck lambert_check(unsigned m, unsigned n, unsigned terms = 20);
// Range of q for Lambert's series: (m-1)/m^{m/(m-1)}.
double lambert_radius(unsigned m);
// Euler's product coefficients against A_t(α/(α-β), n/(α-β))(α-β)^t.
TermCheck euler_check(const Rational& alpha, const Rational& beta, const Rational& n, unsigned terms = 20);
// Printed first terms of Euler's solution (t <= 4) against the general product.
TermCheck euler_printed_check(const Rational& alpha, const Rational& beta, const Rational& n);

struct RamanujanCheck {
  TermCheck exact;      // cancelled product form vs A_k(p/q, n/q)(-qa)^k, rational
  TermCheck gamma;      // Γ-ratio form vs FC terms, floating
  double radius = 0.0;  // (1/|q|)/ratio_limit(p/q)
  double printed_radius = 0.0;
  cplx value;           // x^n from the FC series
  double fixed_point_residual = 0.0;
};
RamanujanCheck ramanujan_check(double p, double q, double n, cplx a, unsigned terms = 20);

// ---- domain tables ----

struct PrintedCondition {
  int q_sign = 1;
  std::vector<int> sigma;
  int inequality = 1;  // +1 for >= 0, -1 for <= 0
};

struct DomainRow {
  PivotChoice pivot;
  std::vector<PrintedCondition> printed;
  std::vector<BoundCondition> computed;
  bool matches = false;
  std::string formula;  // rendering of the computed conditions
};

struct CubicTable {
  PsiFamily families[6];
  std::vector<DomainRow> rows;
  double d02_a1_axis = 0.0;   // boundary along |b1| for pivot (0,2)
  double d02_a3_axis = 0.0;   // boundary along |b3|
  bool original_d02_rejects_origin = false;
};
CubicTable cubic_domain_table();

struct QuinticTable {
  std::vector<DomainRow> rows;
  bool origin_inside_all = false;
};
QuinticTable principal_quintic_domains();

// ---- Brioschi ----

enum class PivotOutcome { ConvergesWithRoots, NeverConverges, OutsideDomain };
std::string to_string(PivotOutcome o);

struct BrioschiPivot {
  PivotChoice pivot;
  PivotOutcome outcome = PivotOutcome::OutsideDomain;
  unsigned roots = 0;
};

struct BrioschiVerdict {
  cplx C;
  std::vector<BrioschiPivot> per_pivot;
  bool covered = false;
  std::vector<RootSeriesResult> roots;
};

AlgebraicEquation brioschi_equation(cplx C);
BrioschiVerdict brioschi_analysis(cplx C);

struct BrioschiThresholds {
  double lower = 0.0;  // (-17 + 13√2)/42336, below which (0,5) converges
  double upper = 0.0;  // (17 + 13√2)/42336, above which (0,1) and (1,5) converge
  double exact_lower = 0.0;
  double exact_upper = 0.0;
};
BrioschiThresholds brioschi_thresholds();

// ---- exact identities ----

struct IdentityResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t printed_failures = 0;  // the form as printed, where it differs from the checked one
  std::string note;
  bool passed() const { return failures == 0; }
};

struct IdentityOptions {
  unsigned max_level = 5;
  unsigned max_k = 3;
  unsigned draws = 50;
  unsigned long long seed = 20240611ULL;
};
std::vector<IdentityResult> identity_suite(const IdentityOptions& opts = {});

// One term of x_ℓ^r as a monomial in the original coefficients:
// coefficient · e^{iπ·phase_turns} · ∏ a_j^{exponents[j]}.
struct PuiseuxTerm {
  std::vector<unsigned> t;
  Rational coefficient;
  Rational phase_turns;
  std::vector<Rational> exponents;
};
std::vector<PuiseuxTerm> puiseux_terms(const std::vector<unsigned>& support, const PivotChoice& pivot,
                                       unsigned branch, const Rational& r, unsigned max_level);

struct SturmfelsReport {
  std::vector<Rational> coefficients;  // bracketed coefficients in printed order
  bool coefficients_match = false;
  bool quintic_05_leading_match = false;
  bool printed_05_a2_exponent_consistent = false;
  Rational M;
  double M_ratio_limit_crosscheck = 0.0;
};
SturmfelsReport sturmfels_checks();

}  // namespace fcs
