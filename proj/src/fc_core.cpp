#include "fcseries/fc_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fcseries/errors.hpp"

namespace fcs {

namespace {

constexpr unsigned kDirectProductMaxLevel = 48;

long double factorial_ld(unsigned n) {
  static const std::vector<long double> table = [] {
    std::vector<long double> f(kDirectProductMaxLevel + 1, 1.0L);
    for (unsigned i = 1; i <= kDirectProductMaxLevel; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  if (n < table.size()) return table[n];
  long double f = table.back();
  for (unsigned i = kDirectProductMaxLevel + 1; i <= n; ++i) f *= i;
  return f;
}

struct LogValue {
  int sign = 0;  // 0 means the value is exactly zero
  double log_abs = 0.0;
};

// log|∏_{j=1}^{t-1}(x - j)| with its sign, split so every lgamma argument is positive.
LogValue log_falling(double x, unsigned t) {
  const double n = static_cast<double>(t) - 1.0;
  if (t <= 1) return {1, 0.0};
  if (x == std::floor(x) && x >= 1.0 && x <= n) return {0, 0.0};
  if (x > n) return {1, std::lgamma(x) - std::lgamma(x - n)};
  if (x < 1.0) {
    int s = (static_cast<long long>(n) % 2 == 0) ? 1 : -1;
    return {s, std::lgamma(n + 1.0 - x) - std::lgamma(1.0 - x)};
  }
  double f = std::floor(x);
  double pos = std::lgamma(x) - std::lgamma(x - f);
  double neg = std::lgamma(n + 1.0 - x) - std::lgamma(f + 1.0 - x);
  int s = (static_cast<long long>(n - f) % 2 == 0) ? 1 : -1;
  return {s, pos + neg};
}

double ratio_limit_any(double mu) {
  return std::pow(std::abs(mu), mu) * std::pow(std::abs(1.0 - mu), 1.0 - mu);
}

}  // namespace

unsigned MultiFCIndex::level() const {
  return std::accumulate(t_.begin(), t_.end(), 0u);
}

std::vector<double> MultiFCIndex::unit() const {
  const double lv = level();
  std::vector<double> u(t_.size(), 0.0);
  if (lv == 0) return u;
  for (std::size_t j = 0; j < t_.size(); ++j) u[j] = t_[j] / lv;
  return u;
}

MultiFCIndex MultiFCIndex::basis(std::size_t k, std::size_t j) {
  std::vector<unsigned> t(k, 0);
  t.at(j) = 1;
  return MultiFCIndex(std::move(t));
}

double fc_number(const FCParams& params, unsigned t) {
  if (t == 0) return 1.0;
  const long double x = static_cast<long double>(t) * params.mu + params.r;
  long double prod = static_cast<long double>(params.r) / t;
  for (unsigned j = 1; j < t; ++j) prod *= (x - j) / j;
  return static_cast<double>(prod);
}

Rational fc_number_exact(const Rational& mu, const Rational& r, unsigned t) {
  if (t == 0) return Rational(1);
  const Rational x = Rational(t) * mu + r;
  Rational prod = r;
  for (unsigned j = 1; j < t; ++j) prod *= (x - j);
  prod /= Rational(factorial(t));
  return prod;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer multinomial(std::span<const unsigned> t) {
  unsigned total = 0;
  Integer den = 1;
  for (unsigned c : t) {
    total += c;
    den *= factorial(c);
  }
  Integer num = factorial(total);
  return num / den;
}

double fc_multi(const MultiFCParams& params, const MultiFCIndex& idx) {
  if (idx.size() != params.mu.size()) throw DimensionMismatch("fc_multi: index and exponent lengths differ");
  const unsigned lv = idx.level();
  if (lv == 0) return 1.0;
  long double x = params.r;
  for (std::size_t j = 0; j < idx.size(); ++j) x += static_cast<long double>(idx[j]) * params.mu[j];
  long double prod = params.r;
  for (unsigned j = 1; j < lv; ++j) prod *= (x - j);
  for (std::size_t j = 0; j < idx.size(); ++j) prod /= factorial_ld(idx[j]);
  return static_cast<double>(prod);
}

double fc_multi_multinomial(const MultiFCParams& params, const MultiFCIndex& idx) {
  if (idx.size() != params.mu.size()) throw DimensionMismatch("fc_multi: index and exponent lengths differ");
  const unsigned lv = idx.level();
  if (lv == 0) return 1.0;
  const auto u = idx.unit();
  double mu_dir = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) mu_dir += u[j] * params.mu[j];
  return multinomial(idx.components()).get_d() * fc_number({mu_dir, params.r}, lv);
}

Rational fc_multi_exact(std::span<const Rational> mu, const Rational& r, std::span<const unsigned> t) {
  if (mu.size() != t.size()) throw DimensionMismatch("fc_multi_exact: index and exponent lengths differ");
  unsigned lv = 0;
  Rational x = r;
  Integer den = 1;
  for (std::size_t j = 0; j < t.size(); ++j) {
    lv += t[j];
    x += Rational(t[j]) * mu[j];
    den *= factorial(t[j]);
  }
  if (lv == 0) return Rational(1);
  Rational prod = r;
  for (unsigned j = 1; j < lv; ++j) prod *= (x - j);
  prod /= Rational(den);
  return prod;
}

Rational fc_multi_exact_multinomial(std::span<const Rational> mu, const Rational& r,
                                    std::span<const unsigned> t) {
  if (mu.size() != t.size()) throw DimensionMismatch("fc_multi_exact: index and exponent lengths differ");
  unsigned lv = 0;
  for (unsigned c : t) lv += c;
  if (lv == 0) return Rational(1);
  Rational mu_dir = 0;
  for (std::size_t j = 0; j < t.size(); ++j) mu_dir += frac(t[j], lv) * mu[j];
  mu_dir.canonicalize();
  return Rational(multinomial(t)) * fc_number_exact(mu_dir, r, lv);
}

void for_each_composition(unsigned t, std::size_t k,
                          const std::function<void(std::span<const unsigned>)>& fn) {
  if (k == 0) throw InvalidInput("compositions: k must be positive");
  std::vector<unsigned> c(k, 0);
  c[k - 1] = t;
  while (true) {
    fn(c);
    // Rightmost slot (excluding the last) with a positive tail after it.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) - 2;
    unsigned tail = c[k - 1];
    while (i >= 0 && tail == 0) {
      tail += c[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) return;
    auto ui = static_cast<std::size_t>(i);
    c[ui] += 1;
    for (std::size_t j = ui + 1; j + 1 < k; ++j) c[j] = 0;
    c[k - 1] = tail - 1;
  }
}

std::vector<std::vector<unsigned>> compositions(unsigned t, std::size_t k) {
  std::vector<std::vector<unsigned>> out;
  for_each_composition(t, k, [&](std::span<const unsigned> c) { out.emplace_back(c.begin(), c.end()); });
  return out;
}

LevelSeries::LevelSeries(MultiFCParams params, std::vector<cplx> z)
    : params_(std::move(params)), z_(std::move(z)) {
  if (params_.mu.empty()) throw InvalidInput("LevelSeries: empty exponent vector");
  if (params_.mu.size() != z_.size()) throw DimensionMismatch("LevelSeries: exponent and argument lengths differ");
  for (cplx w : z_) {
    log_abs_z_.push_back(std::log(std::abs(w)));
    arg_z_.push_back(std::arg(w));
  }
}

cplx LevelSeries::term(std::span<const unsigned> c, unsigned t) const {
  if (t == 0) return {1.0, 0.0};
  if (params_.r == 0.0) return {0.0, 0.0};
  double log_z = 0.0;
  double phase = 0.0;
  long double x = params_.r;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    if (z_[j] == cplx(0.0, 0.0)) return {0.0, 0.0};
    log_z += c[j] * log_abs_z_[j];
    phase += std::fmod(c[j] * arg_z_[j], kTwoPi);
    x += static_cast<long double>(c[j]) * params_.mu[j];
  }
  int sign;
  double log_coef;
  if (t <= kDirectProductMaxLevel) {
    long double prod = params_.r;
    for (unsigned j = 1; j < t; ++j) prod *= (x - j);
    for (unsigned cj : c) prod /= factorial_ld(cj);
    if (prod == 0.0L) return {0.0, 0.0};
    sign = prod > 0 ? 1 : -1;
    log_coef = static_cast<double>(std::log(std::fabs(prod)));
  } else {
    LogValue lf = log_falling(static_cast<double>(x), t);
    if (lf.sign == 0) return {0.0, 0.0};
    sign = lf.sign * (params_.r > 0 ? 1 : -1);
    log_coef = std::log(std::abs(params_.r)) + lf.log_abs;
    for (unsigned cj : c) log_coef -= std::lgamma(cj + 1.0);
  }
  return std::polar(sign * std::exp(log_coef + log_z), phase);
}

void LevelSeries::extend_to(std::size_t T) {
  const std::size_t k = params_.mu.size();
  while (level_sums_.empty() || level() < T) {
    const auto t = static_cast<unsigned>(level_sums_.size());
    CompensatedComplexSum lvl;
    CompensatedSum lvl_abs;
    for_each_composition(t, k, [&](std::span<const unsigned> c) {
      cplx v = term(c, t);
      lvl.add(v);
      lvl_abs.add(std::abs(v));
      ++terms_;
    });
    level_sums_.push_back(lvl.value());
    level_abs_.push_back(lvl_abs.value());
    total_.add(lvl.value());
  }
}

double LevelSeries::tail_estimate() const {
  const std::size_t T = level();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (level_sums_.empty()) return inf;
  if (params_.mu.size() == 1) {
    const double rho = std::abs(z_[0]) * ratio_limit_any(params_.mu[0]);
    if (rho == 0.0) return 0.0;
    if (rho > 1.0 + 1e-12) return inf;
    double ref = 0.0;
    const std::size_t window = std::min<std::size_t>(10, T + 1);
    for (std::size_t i = 0; i < window; ++i) {
      ref = std::max(ref, level_abs_[T - i] * std::pow(rho, static_cast<double>(i)));
    }
    const double slow = 2.0 * static_cast<double>(T) + 2.0;
    const double geom = rho < 1.0 ? rho / (1.0 - rho) : slow;
    return ref * std::min(geom, slow);
  }
  auto smoothed = [&](std::size_t t) {
    return t == 0 ? level_abs_[0] : std::max(level_abs_[t], level_abs_[t - 1]);
  };
  const double last = smoothed(T);
  if (last == 0.0) return 0.0;
  const std::size_t w = std::min<std::size_t>(10, T / 2);
  if (w == 0) return inf;
  const double prev = smoothed(T - w);
  if (prev == 0.0) return inf;
  const double rho = std::pow(last / prev, 1.0 / static_cast<double>(w));
  if (!(rho < 1.0 - 1e-3)) return inf;
  return last * rho / (1.0 - rho);
}

SeriesValue LevelSeries::result() const {
  SeriesValue out;
  out.value = value();
  out.truncation_level = level();
  out.tail_estimate = tail_estimate();
  if (params_.mu.size() == 1) out.outside_radius = std::abs(z_[0]) * ratio_limit_any(params_.mu[0]) > 1.0 + 1e-12;
  return out;
}

SeriesValue genfun_eval(const FCParams& params, cplx z, std::size_t T) {
  LevelSeries s(MultiFCParams{{params.mu}, params.r}, {z});
  s.extend_to(T);
  return s.result();
}

SeriesValue genfun_multi_eval(const MultiFCParams& params, std::span<const cplx> z, std::size_t T) {
  if (params.mu.size() != z.size()) throw DimensionMismatch("genfun_multi_eval: exponent and argument lengths differ");
  LevelSeries s(params, std::vector<cplx>(z.begin(), z.end()));
  s.extend_to(T);
  return s.result();
}

ExactSeries exact_genfun_coefficients(std::span<const Rational> mu, const Rational& r, unsigned T) {
  ExactSeries out;
  for (unsigned t = 0; t <= T; ++t) {
    for_each_composition(t, mu.size(), [&](std::span<const unsigned> c) {
      out.emplace_back(std::vector<unsigned>(c.begin(), c.end()), fc_multi_exact(mu, r, c));
    });
  }
  return out;
}

}  // namespace fcs
