#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fcseries/complex_util.hpp"

namespace fcs {

using Rational = mpq_class;
using Integer = mpz_class;

// num/den in lowest terms; gmp arithmetic needs canonical operands.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

struct FCParams {
  double mu = 0.0;
  double r = 0.0;
};

struct MultiFCParams {
  std::vector<double> mu;
  double r = 0.0;
};

class MultiFCIndex {
 public:
  MultiFCIndex() = default;
  explicit MultiFCIndex(std::vector<unsigned> t) : t_(std::move(t)) {}

  std::size_t size() const { return t_.size(); }
  unsigned operator[](std::size_t j) const { return t_[j]; }
  std::span<const unsigned> components() const { return t_; }
  unsigned level() const;
  // t⃗/|t⃗|; only meaningful when level() > 0.
  std::vector<double> unit() const;

  static MultiFCIndex zero(std::size_t k) { return MultiFCIndex(std::vector<unsigned>(k, 0)); }
  static MultiFCIndex basis(std::size_t k, std::size_t j);

  friend bool operator==(const MultiFCIndex&, const MultiFCIndex&) = default;

 private:
  std::vector<unsigned> t_;
};

struct SeriesValue {
  cplx value;
  std::size_t truncation_level = 0;
  double tail_estimate = 0.0;  // +inf when no geometric bound applies
  bool outside_radius = false;
};

double fc_number(const FCParams& params, unsigned t);
Rational fc_number_exact(const Rational& mu, const Rational& r, unsigned t);

// Product form over the level |t⃗|.
double fc_multi(const MultiFCParams& params, const MultiFCIndex& idx);
// Multinomial times A_t(t̂·μ⃗, r).
double fc_multi_multinomial(const MultiFCParams& params, const MultiFCIndex& idx);
Rational fc_multi_exact(std::span<const Rational> mu, const Rational& r, std::span<const unsigned> t);
Rational fc_multi_exact_multinomial(std::span<const Rational> mu, const Rational& r,
                                    std::span<const unsigned> t);

Integer multinomial(std::span<const unsigned> t);
Integer factorial(unsigned n);

// All k-tuples of naturals summing to t, ascending lexicographic order.
std::vector<std::vector<unsigned>> compositions(unsigned t, std::size_t k);
void for_each_composition(unsigned t, std::size_t k,
                          const std::function<void(std::span<const unsigned>)>& fn);

// Incremental level-set summation of the multiparameter generating function.
class LevelSeries {
 public:
  LevelSeries(MultiFCParams params, std::vector<cplx> z);

  void extend_to(std::size_t T);
  cplx value() const { return total_.value(); }
  std::size_t level() const { return level_sums_.empty() ? 0 : level_sums_.size() - 1; }
  std::size_t term_count() const { return terms_; }
  // Σ|term| over the compositions of level t.
  double level_abs(std::size_t t) const { return level_abs_.at(t); }
  double tail_estimate() const;
  SeriesValue result() const;

 private:
  cplx term(std::span<const unsigned> c, unsigned t) const;

  MultiFCParams params_;
  std::vector<cplx> z_;
  std::vector<double> log_abs_z_;
  std::vector<double> arg_z_;
  CompensatedComplexSum total_;
  std::vector<cplx> level_sums_;
  std::vector<double> level_abs_;
  std::size_t terms_ = 0;
};

SeriesValue genfun_eval(const FCParams& params, cplx z, std::size_t T);
SeriesValue genfun_multi_eval(const MultiFCParams& params, std::span<const cplx> z, std::size_t T);

// Truncated multivariate power series with exact coefficients, keyed by exponent tuple.
using ExactSeries = std::vector<std::pair<std::vector<unsigned>, Rational>>;
// Coefficients of B(μ⃗; r; z⃗) for all |t⃗| ≤ T, ascending levels.
ExactSeries exact_genfun_coefficients(std::span<const Rational> mu, const Rational& r, unsigned T);

}  // namespace fcs
