#include "hgs/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hgs {

double i0_scaled(double x) {
  if (x < 0.0) throw std::invalid_argument("i0_scaled: x >= 0 required");
  if (x <= 40.0) {
    // I0(x) = sum_k (x^2/4)^k / (k!)^2, all terms positive.
    double term = 1.0, sum = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  // e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 12; ++k) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double sphere_area(int n_ambient) {
  if (n_ambient < 1) throw std::invalid_argument("sphere_area: N >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n_ambient) /
         std::tgamma(0.5 * n_ambient);
}

}  // namespace hgs
