#include "fcseries/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcseries/errors.hpp"

namespace fcs {

namespace {

void require_nondegenerate(double mu) {
  if (mu == 0.0 || mu == 1.0) throw DegenerateExponent("exponent 0 or 1 has no finite ratio bound");
}

void require_nonempty(std::span<const double> mu) {
  if (mu.empty()) throw InvalidInput("empty exponent vector");
  for (double m : mu) require_nondegenerate(m);
}

struct Extremes {
  double lo;
  double hi;
};

Extremes extremes(std::span<const double> mu) {
  auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
  return {*lo, *hi};
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(std::abs(x)); }

// log of ratio_limit, continuous through 0 and 1
double log_rate(double m) { return xlogx(m) - xlogx(m - 1.0); }

// min_λ log Σ_j exp(l_j + λ μ_j) - λ m: the entropy-maximal split of a level at mean exponent m.
double tilted_entropy(std::span<const double> logb, std::span<const double> mu, double m) {
  auto moments = [&](double lambda, double& value, double& mean, double& var) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < mu.size(); ++j) top = std::max(top, logb[j] + lambda * mu[j]);
    double z = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const double w = std::exp(logb[j] + lambda * mu[j] - top);
      z += w;
      s1 += w * mu[j];
      s2 += w * mu[j] * mu[j];
    }
    mean = s1 / z;
    var = std::max(0.0, s2 / z - mean * mean);
    value = top + std::log(z) - lambda * m;
  };
  // bracket the root of mean(λ) = m, then safeguarded Newton
  double lo = -1.0, hi = 1.0, v, mean, var;
  moments(lo, v, mean, var);
  while (mean > m && lo > -1e6) {
    lo *= 2.0;
    moments(lo, v, mean, var);
  }
  moments(hi, v, mean, var);
  while (mean < m && hi < 1e6) {
    hi *= 2.0;
    moments(hi, v, mean, var);
  }
  double lambda = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    moments(lambda, v, mean, var);
    const double g = mean - m;
    if (g > 0.0) hi = lambda;
    else lo = lambda;
    double next = var > 0.0 ? lambda - g / var : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(lambda))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  moments(lambda, v, mean, var);
  return v;
}

}  // namespace

double ratio_limit(double mu) {
  require_nondegenerate(mu);
  return std::pow(std::abs(mu), mu) * std::pow(std::abs(1.0 - mu), 1.0 - mu);
}

double asymptotic_fc(const FCParams& params, unsigned t) {
  require_nondegenerate(params.mu);
  if (t == 0) throw InvalidInput("asymptotic_fc: t must be positive");
  const double mu = params.mu;
  const double r = params.r;
  const double td = t;
  const double log_mag = (r - 0.5) * std::log(std::abs(mu)) - (r + 0.5) * std::log(std::abs(1.0 - mu)) +
                         td * std::log(ratio_limit(mu)) - 1.5 * std::log(td) - 0.5 * std::log(kTwoPi);
  return r * std::exp(log_mag);
}

BoxBound necessary_box(std::span<const double> mu) {
  require_nonempty(mu);
  BoxBound b;
  for (double m : mu) b.per_coordinate_max.push_back(1.0 / ratio_limit(m));
  return b;
}

SimplexBound sufficient_simplex(std::span<const double> mu) {
  require_nonempty(mu);
  const auto [lo, hi] = extremes(mu);
  SimplexBound s;
  s.radius = std::min(1.0 / ratio_limit(lo), 1.0 / ratio_limit(hi));
  // Equidistant extremes (up to rounding) take the last exponent.
  s.mu_star = std::abs(lo - 0.5) > std::abs(hi - 0.5) + 1e-12 ? lo : hi;
  return s;
}

double trinomial_radius(double mu) {
  return 1.0 / ratio_limit(mu);
}

double mellin_bound(std::span<const double> mu) {
  require_nonempty(mu);
  const auto [lo, hi] = extremes(mu);
  return std::min(1.0 / ratio_limit(lo), 1.0 / ratio_limit(hi)) / static_cast<double>(mu.size());
}

MeasureBounds measure_bounds(std::span<const double> mu) {
  require_nonempty(mu);
  MeasureBounds m;
  m.upper = 1.0;
  for (double x : mu) m.upper /= ratio_limit(x);
  const double star_radius = 1.0 / ratio_limit(sufficient_simplex(mu).mu_star);
  const double k = static_cast<double>(mu.size());
  m.lower = std::pow(star_radius, k) / std::tgamma(k + 1.0);
  return m;
}

double growth_exponent(std::span<const double> amplitudes, std::span<const double> mu) {
  if (amplitudes.size() != mu.size()) throw DimensionMismatch("growth_exponent: amplitudes and exponents differ in length");
  std::vector<double> logb, m;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (!(amplitudes[j] >= 0.0)) throw InvalidInput("growth_exponent: amplitudes must be nonnegative");
    if (amplitudes[j] > 0.0) {
      logb.push_back(std::log(amplitudes[j]));
      m.push_back(mu[j]);
    }
  }
  if (m.empty()) return -std::numeric_limits<double>::infinity();
  if (m.size() == 1) return logb[0] + log_rate(m[0]);

  const auto [lo_it, hi_it] = std::minmax_element(m.begin(), m.end());
  const double lo = *lo_it, hi = *hi_it;
  auto at = [&](double x) {
    if (x <= lo) return logb[static_cast<std::size_t>(lo_it - m.begin())] + log_rate(lo);
    if (x >= hi) return logb[static_cast<std::size_t>(hi_it - m.begin())] + log_rate(hi);
    return tilted_entropy(logb, m, x) + log_rate(x);
  };
  // The level-set exponent is not concave where the mean crosses (0,1): grid, then golden section.
  constexpr int kGrid = 512;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double v = at(lo + (hi - lo) * i / kGrid);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / kGrid;
  double b = lo + (hi - lo) * std::min(kGrid, best + 1) / kGrid;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = at(x1), f2 = at(x2);
  while (b - a > 1e-13 * std::max(1.0, std::abs(a))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = at(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = at(x1);
    }
  }
  return std::max({best_val, f1, f2});
}

}  // namespace fcs
