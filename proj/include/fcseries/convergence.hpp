#pragma once

#include <span>
#include <vector>

#include "fcseries/fc_core.hpp"

namespace fcs {

struct BoxBound {
  std::vector<double> per_coordinate_max;
};

struct SimplexBound {
  double radius = 0.0;
  double mu_star = 0.0;
};

struct MeasureBounds {
  double lower = 0.0;
  double upper = 0.0;
};

double ratio_limit(double mu);
double asymptotic_fc(const FCParams& params, unsigned t);
BoxBound necessary_box(std::span<const double> mu);
SimplexBound sufficient_simplex(std::span<const double> mu);
double trinomial_radius(double mu);
double mellin_bound(std::span<const double> mu);
MeasureBounds measure_bounds(std::span<const double> mu);

// lim (1/t) log max_{|t⃗|=t} |𝒜_t⃗(μ⃗, r)| b⃗^t⃗, the exponential growth rate of the
// absolute series at amplitudes b. Negative inside the domain, zero on its boundary,
// -inf when every amplitude is zero. Along a ray, growth_exponent(λb) = growth_exponent(b) + log λ.
double growth_exponent(std::span<const double> amplitudes, std::span<const double> mu);

}  // namespace fcs
