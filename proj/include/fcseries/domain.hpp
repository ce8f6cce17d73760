#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcseries/algebraic.hpp"
#include "fcseries/discriminant.hpp"

namespace fcs {

// Members whose level sets can bound the domain: extremum (or all, when the
// origin value is nonzero) and not sign-definite on the open positive orthant.
std::vector<const PsiMember*> active_members(const PsiFamily& family);

struct Binding {
  std::string member_id;
  double scale = 0.0;
};

struct DomainVerdict {
  bool inside = true;
  bool on_boundary = false;
  std::optional<Binding> binding;
};

// Amplitudes are ordered as family.slots.
DomainVerdict member(std::span<const double> point, const PsiFamily& family);

struct RayCrossing {
  double scale = std::numeric_limits<double>::infinity();
  const PsiMember* member = nullptr;
};
// Boundary scale along λ·direction from the growth exponent, attributed to the
// member vanishing there; member is null when none does. +inf for a zero direction.
RayCrossing first_crossing(std::span<const double> direction, const PsiFamily& family);
double boundary_on_ray(std::span<const double> direction, const PsiFamily& family);

struct BoundCondition {
  const PsiMember* member = nullptr;
  int sign = 0;  // +1 means member >= 0 on the domain, -1 means <= 0
};
// Members that are first hit along some interior ray, with their inequality direction.
std::vector<BoundCondition> binding_conditions(const PsiFamily& family, std::size_t directions = 256);

struct Polyline {
  std::vector<std::array<double, 2>> points;
};
struct Window {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};
// Zero contour of member over the window in variables (vx, vy); other variables take `fixed`.
std::vector<Polyline> trace_level_set(const MultiPoly& member, std::size_t vx, std::size_t vy, const Window& window,
                                      std::size_t grid, std::span<const double> fixed = {});
void write_trace_csv(std::ostream& out, const std::vector<std::pair<std::string, std::vector<Polyline>>>& traces);

enum class Convergence { Converges, Diverges, Borderline };
std::string to_string(Convergence c);

struct EmpiricalReport {
  Convergence verdict = Convergence::Borderline;
  double last_ratio = 0.0;
  double residual = 0.0;
};
std::vector<std::size_t> default_schedule(std::size_t variables);
EmpiricalReport empirical_convergence(const AlgebraicEquation& eq, const PivotChoice& pivot, unsigned branch,
                                      std::span<const std::size_t> schedule = {});

bool log_convexity_probe(std::span<const double> p1, std::span<const double> p2, const PsiFamily& family,
                         std::size_t samples = 32);

}  // namespace fcs
