#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fcseries/complex_util.hpp"
#include "fcseries/errors.hpp"
#include "fcseries/fc_core.hpp"
#include "fcseries/pivot.hpp"

namespace fcs {

// a_0 + a_1 x + ... + a_n x^n with a_0, a_n nonzero and n >= 2.
struct AlgebraicEquation {
  std::vector<cplx> coeffs;

  unsigned degree() const { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
  void validate() const;
  // Slots with nonzero coefficient, ascending.
  std::vector<unsigned> support() const;
};

struct ScaledEquation {
  PivotChoice pivot;
  cplx scale;                   // c with c^{q-p} = a_p/a_q, principal sheet
  std::vector<unsigned> slots;  // free slots with nonzero coefficient, ascending
  std::vector<cplx> b;          // b_j per free slot
  std::vector<double> mu;       // (j - p)/(q - p) per free slot
  std::vector<Rational> mu_exact;

  unsigned branch_count() const { return pivot.branch_count(); }
  std::vector<double> amplitudes() const;
  // Series arguments z_j = b_j e^{iπ(2ℓ+1)μ_j} for branch ℓ.
  std::vector<cplx> arguments(unsigned branch) const;
};

ScaledEquation scale_equation(const AlgebraicEquation& eq, const PivotChoice& pivot);

// e^{iπ(2ℓ+1)/(q-p)} for ℓ = 0..q-p-1.
std::vector<cplx> branch_phases(const PivotChoice& pivot);

struct RootSeriesResult {
  PivotChoice pivot;
  unsigned branch = 0;
  double power = 1.0;
  cplx value;
  std::size_t truncation = 0;
  double tail_estimate = 0.0;
  double residual = 0.0;  // of the r = 1 value
};

RootSeriesResult series_root_power(const AlgebraicEquation& eq, const PivotChoice& pivot, unsigned branch, double r,
                                   std::size_t T);
RootSeriesResult series_root_power(const ScaledEquation& scaled, const AlgebraicEquation& eq, unsigned branch,
                                   double r, std::size_t T);

struct SolveOptions {
  std::size_t initial_terms = 50;
  std::size_t max_terms = std::size_t{1} << 16;
  double tail_target = 1e-9;
  double work_budget = 5e7;  // series terms per branch
  double dedup_tolerance = 1e-6;
};

struct SolveResult {
  std::vector<RootSeriesResult> roots;
  std::size_t uncovered = 0;
};

struct NoConvergentCover : Error {
  NoConvergentCover(const std::string& what, SolveResult partial) : Error(what), partial(std::move(partial)) {}
  SolveResult partial;
};

// Throws NoConvergentCover with whatever was found when some roots have no convergent series.
SolveResult solve_all(const AlgebraicEquation& eq, const SolveOptions& opts = {});

std::vector<cplx> oracle_roots(const AlgebraicEquation& eq);
double residual(const AlgebraicEquation& eq, cplx x);

struct RootMatch {
  std::vector<std::size_t> assignment;  // series index -> oracle index
  double max_error = 0.0;               // relative to max(1, |oracle root|)
  bool collision = false;
};
RootMatch match_roots(std::span<const cplx> series, std::span<const cplx> oracle);

}  // namespace fcs
