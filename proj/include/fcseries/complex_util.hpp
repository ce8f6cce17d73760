#pragma once

#include <complex>
#include <numbers>

namespace fcs {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Argument in [0, 2π): the cut lies along the positive real axis.
double arg_cut(cplx w);

// w^alpha on the [0, 2π) sheet; 0^alpha is 0 for alpha > 0 and 1 for alpha == 0.
cplx pow_cut(cplx w, double alpha);

// e^{iπ·turns}
cplx phase_pi(double turns);

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace fcs
