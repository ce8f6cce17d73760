#include "fcseries/complex_util.hpp"

#include <cmath>

namespace fcs {

double arg_cut(cplx w) {
  double a = std::atan2(w.imag(), w.real());
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

cplx pow_cut(cplx w, double alpha) {
  if (alpha == 0.0) return {1.0, 0.0};
  double mag = std::abs(w);
  if (mag == 0.0) return {0.0, 0.0};
  return std::polar(std::pow(mag, alpha), alpha * arg_cut(w));
}

cplx phase_pi(double turns) {
  double t = std::fmod(turns, 2.0);
  return std::polar(1.0, kPi * t);
}

void CompensatedSum::add(double x) {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace fcs
