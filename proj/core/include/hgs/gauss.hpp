#pragma once

#include <vector>

namespace hgs {

// One-dimensional quadrature rule: nodes x[i] with weights w[i].
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

// n-point Gauss-Legendre rule on [-1,1].
Rule1D gauss_legendre(int n);

// n-point Gauss-Legendre rule mapped to [a,b].
Rule1D gauss_legendre(int n, double a, double b);

// Composite rule: `panels` equal panels on [a,b], pts-point Gauss each.
Rule1D composite_gauss(int panels, int pts, double a, double b);

// Uniform periodic (trapezoidal) rule on [0,2*pi): n nodes, weight 2*pi/n.
// Exact for trigonometric polynomials of degree < n.
Rule1D uniform_circle(int n);

// Cached [-1,1] rule for hot panel loops (thread-safe, small n only).
const Rule1D& gauss_legendre_cached(int n);

// Accumulate f over one panel [a,b] using a cached [-1,1] base rule.
template <class F>
double integrate_panel(const Rule1D& base, double a, double b, F&& f) {
  const double c = 0.5 * (b - a), d = 0.5 * (b + a);
  double s = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i)
    s += base.w[i] * f(c * base.x[i] + d);
  return c * s;
}

}  // namespace hgs
