#include "fcseries/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "fcseries/convergence.hpp"
#include "fcseries/domain.hpp"

namespace fcs {

namespace {

using lcplx = std::complex<long double>;

constexpr unsigned kFamilyDegreeCap = 6;

bool is_zero(cplx w) { return w == cplx(0.0, 0.0); }

}  // namespace

void AlgebraicEquation::validate() const {
  if (coeffs.size() < 3) throw InvalidInput("equation degree must be at least 2");
  for (cplx a : coeffs)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidInput("non-finite coefficient");
  if (is_zero(coeffs.front())) throw InvalidInput("constant coefficient a_0 must be nonzero");
  if (is_zero(coeffs.back())) throw InvalidInput("leading coefficient a_n must be nonzero");
}

std::vector<unsigned> AlgebraicEquation::support() const {
  std::vector<unsigned> s;
  for (unsigned j = 0; j < coeffs.size(); ++j)
    if (!is_zero(coeffs[j])) s.push_back(j);
  return s;
}

std::vector<double> ScaledEquation::amplitudes() const {
  std::vector<double> a;
  for (cplx v : b) a.push_back(std::abs(v));
  return a;
}

std::vector<cplx> ScaledEquation::arguments(unsigned branch) const {
  if (branch >= branch_count()) throw BranchOutOfRange("branch index exceeds q - p - 1");
  std::vector<cplx> z;
  const double turn = 2.0 * branch + 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) z.push_back(b[i] * phase_pi(turn * mu[i]));
  return z;
}

ScaledEquation scale_equation(const AlgebraicEquation& eq, const PivotChoice& pivot) {
  const unsigned n = eq.degree();
  if (pivot.p >= pivot.q || pivot.q > n) throw InvalidInput("pivot must satisfy 0 <= p < q <= n");
  const cplx ap = eq.coeffs[pivot.p];
  const cplx aq = eq.coeffs[pivot.q];
  if (is_zero(ap) || is_zero(aq)) throw InvalidInput("pivot coefficients must be nonzero");
  ScaledEquation s;
  s.pivot = pivot;
  s.scale = pow_cut(ap / aq, 1.0 / pivot.branch_count());
  for (unsigned j = 0; j <= n; ++j) {
    if (j == pivot.p || j == pivot.q || is_zero(eq.coeffs[j])) continue;
    s.slots.push_back(j);
    s.b.push_back(eq.coeffs[j] * std::pow(s.scale, static_cast<int>(j) - static_cast<int>(pivot.p)) / ap);
    s.mu_exact.push_back(pivot_exponent(pivot, j));
    s.mu.push_back(s.mu_exact.back().get_d());
  }
  return s;
}

std::vector<cplx> branch_phases(const PivotChoice& pivot) {
  std::vector<cplx> out;
  const double m = pivot.branch_count();
  for (unsigned l = 0; l < pivot.branch_count(); ++l) out.push_back(phase_pi((2.0 * l + 1.0) / m));
  return out;
}

namespace {

struct BranchSum {
  cplx series = {1.0, 0.0};
  std::size_t level = 0;
  double tail = 0.0;
};

BranchSum sum_branch(const ScaledEquation& s, unsigned branch, double r, std::size_t T) {
  BranchSum out;
  if (s.slots.empty()) return out;
  LevelSeries series(MultiFCParams{s.mu, r / s.branch_count()}, s.arguments(branch));
  series.extend_to(T);
  out.series = series.value();
  out.level = series.level();
  out.tail = series.tail_estimate();
  return out;
}

cplx prefactor(const ScaledEquation& s, unsigned branch, double r) {
  return pow_cut(s.scale, r) * phase_pi((2.0 * branch + 1.0) * r / s.branch_count());
}

}  // namespace

RootSeriesResult series_root_power(const ScaledEquation& scaled, const AlgebraicEquation& eq, unsigned branch,
                                   double r, std::size_t T) {
  if (branch >= scaled.branch_count()) throw BranchOutOfRange("branch index exceeds q - p - 1");
  RootSeriesResult out;
  out.pivot = scaled.pivot;
  out.branch = branch;
  out.power = r;
  const BranchSum sum = sum_branch(scaled, branch, r, T);
  const cplx pre = prefactor(scaled, branch, r);
  out.value = pre * sum.series;
  out.truncation = sum.level;
  out.tail_estimate = std::abs(pre) * sum.tail;
  if (r == 1.0) {
    out.residual = residual(eq, out.value);
  } else {
    const BranchSum one = sum_branch(scaled, branch, 1.0, T);
    out.residual = residual(eq, prefactor(scaled, branch, 1.0) * one.series);
  }
  return out;
}

RootSeriesResult series_root_power(const AlgebraicEquation& eq, const PivotChoice& pivot, unsigned branch, double r,
                                   std::size_t T) {
  eq.validate();
  return series_root_power(scale_equation(eq, pivot), eq, branch, r, T);
}

double residual(const AlgebraicEquation& eq, cplx x) {
  lcplx acc = 0.0L;
  long double scale = 0.0L;
  const lcplx lx(x.real(), x.imag());
  const long double ax = std::abs(lx);
  long double power = 1.0L;
  for (std::size_t j = eq.coeffs.size(); j-- > 0;) {
    acc = acc * lx + lcplx(eq.coeffs[j].real(), eq.coeffs[j].imag());
  }
  for (cplx a : eq.coeffs) {
    scale += std::abs(lcplx(a.real(), a.imag())) * power;
    power *= ax;
  }
  if (scale == 0.0L) return 0.0;
  return static_cast<double>(std::abs(acc) / scale);
}

namespace {

struct PivotCandidate {
  ScaledEquation scaled;
  bool inside = false;
  double depth = 0.0;
};

PivotCandidate assess_pivot(const AlgebraicEquation& eq, const PivotChoice& pv, const std::vector<unsigned>& support) {
  PivotCandidate c{scale_equation(eq, pv)};
  const auto amps = c.scaled.amplitudes();
  if (std::all_of(amps.begin(), amps.end(), [](double a) { return a == 0.0; })) {
    c.inside = true;
    c.depth = std::numeric_limits<double>::infinity();
    return c;
  }
  auto simplex = [&] {
    const double radius = sufficient_simplex(c.scaled.mu).radius;
    const double total = std::accumulate(amps.begin(), amps.end(), 0.0);
    c.depth = radius / total;
    c.inside = c.depth >= 1.0;
  };
  if (eq.degree() > kFamilyDegreeCap) {
    simplex();
    return c;
  }
  try {
    const PsiFamily family = build_family(pv, support);
    const DomainVerdict v = member(amps, family);
    c.inside = v.inside;
    c.depth = first_crossing(amps, family).scale;
  } catch (const NoActiveBoundary&) {
    simplex();
  }
  return c;
}

}  // namespace

SolveResult solve_all(const AlgebraicEquation& eq, const SolveOptions& opts) {
  eq.validate();
  const auto support = eq.support();
  const std::size_t n = eq.degree();

  std::vector<PivotCandidate> candidates;
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      PivotCandidate c = assess_pivot(eq, {support[i], support[j]}, support);
      if (c.inside) candidates.push_back(std::move(c));
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PivotCandidate& a, const PivotCandidate& b) { return a.depth > b.depth; });

  SolveResult out;
  auto known = [&](cplx x) {
    return std::any_of(out.roots.begin(), out.roots.end(), [&](const RootSeriesResult& r) {
      return std::abs(r.value - x) <= opts.dedup_tolerance * std::max(1.0, std::abs(r.value));
    });
  };

  for (const auto& c : candidates) {
    if (out.roots.size() >= n) break;
    for (unsigned l = 0; l < c.scaled.branch_count() && out.roots.size() < n; ++l) {
      RootSeriesResult best;
      if (c.scaled.slots.empty()) {
        best = series_root_power(c.scaled, eq, l, 1.0, 0);
      } else {
        LevelSeries series(MultiFCParams{c.scaled.mu, 1.0 / c.scaled.branch_count()}, c.scaled.arguments(l));
        const cplx pre = prefactor(c.scaled, l, 1.0);
        std::size_t T = opts.initial_terms;
        for (;;) {
          series.extend_to(T);
          const double tail = series.tail_estimate();
          if (tail < opts.tail_target || T >= opts.max_terms ||
              static_cast<double>(series.term_count()) >= opts.work_budget)
            break;
          T = std::min(2 * T, opts.max_terms);
        }
        best.pivot = c.scaled.pivot;
        best.branch = l;
        best.value = pre * series.value();
        best.truncation = series.level();
        best.tail_estimate = std::abs(pre) * series.tail_estimate();
        best.residual = residual(eq, best.value);
      }
      if (!(best.residual < 1e-6)) continue;
      if (known(best.value)) continue;
      out.roots.push_back(best);
    }
  }
  out.uncovered = n - std::min(n, out.roots.size());
  if (out.uncovered > 0)
    throw NoConvergentCover(std::to_string(out.uncovered) + " of " + std::to_string(n) +
                                " roots have no convergent series under any pivot",
                            out);
  return out;
}

namespace {

struct PolyEval {
  lcplx value;
  lcplx derivative;
};

PolyEval horner(const std::vector<lcplx>& a, lcplx x) {
  lcplx v = 0.0L, d = 0.0L;
  for (std::size_t j = a.size(); j-- > 0;) {
    d = d * x + v;
    v = v * x + a[j];
  }
  return {v, d};
}

long double normalized_residual(const std::vector<lcplx>& a, lcplx x) {
  long double scale = 0.0L, power = 1.0L;
  const long double ax = std::abs(x);
  for (const auto& c : a) {
    scale += std::abs(c) * power;
    power *= ax;
  }
  return std::abs(horner(a, x).value) / scale;
}

// Aberth–Ehrlich simultaneous iteration from points on a circle of radius R.
bool aberth(const std::vector<lcplx>& a, std::vector<lcplx>& z, long double rotation, int max_iter) {
  const std::size_t n = a.size() - 1;
  long double radius = 0.0L;
  for (std::size_t j = 0; j < n; ++j)
    radius = std::max(radius, std::pow(std::abs(a[j] / a[n]), 1.0L / static_cast<long double>(n - j)));
  radius = std::max(radius, 1e-6L);
  z.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double ang = 2.0L * std::numbers::pi_v<long double> * k / n + rotation;
    z[k] = std::polar(radius, ang);
  }
  for (int it = 0; it < max_iter; ++it) {
    long double worst = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const PolyEval pe = horner(a, z[k]);
      if (pe.value == 0.0L) continue;
      const lcplx ratio = pe.value / pe.derivative;
      lcplx sum = 0.0L;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const lcplx step = ratio / (1.0L - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-17L) return true;
  }
  return true;
}

}  // namespace

std::vector<cplx> oracle_roots(const AlgebraicEquation& eq) {
  eq.validate();
  std::vector<lcplx> a;
  for (cplx c : eq.coeffs) a.emplace_back(c.real(), c.imag());
  constexpr int kIterationCap = 10000;
  constexpr long double kTarget = 1e-12L;
  const long double rotations[] = {0.4L, 1.1L, 2.3L};
  for (long double rot : rotations) {
    std::vector<lcplx> z;
    if (!aberth(a, z, rot, kIterationCap)) continue;
    for (auto& x : z) {
      for (int k = 0; k < 3; ++k) {
        const PolyEval pe = horner(a, x);
        if (pe.derivative == 0.0L) break;
        const lcplx nx = x - pe.value / pe.derivative;
        if (normalized_residual(a, nx) <= normalized_residual(a, x)) x = nx;
      }
    }
    bool ok = std::all_of(z.begin(), z.end(), [&](const lcplx& x) { return normalized_residual(a, x) < kTarget; });
    if (!ok) continue;
    std::vector<cplx> out;
    for (const auto& x : z) out.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
    std::sort(out.begin(), out.end(), [](cplx u, cplx v) {
      return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
    });
    return out;
  }
  throw OracleFailure("oracle_roots: simultaneous iteration did not reach the residual target");
}

RootMatch match_roots(std::span<const cplx> series, std::span<const cplx> oracle) {
  RootMatch m;
  std::vector<bool> used(oracle.size(), false);
  for (cplx x : series) {
    std::size_t best = oracle.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      const double d = std::abs(x - oracle[j]) / std::max(1.0, std::abs(oracle[j]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == oracle.size()) {
      m.collision = true;
      m.assignment.push_back(best);
      continue;
    }
    if (used[best]) m.collision = true;
    used[best] = true;
    m.assignment.push_back(best);
    m.max_error = std::max(m.max_error, best_d);
  }
  return m;
}

}  // namespace fcs
