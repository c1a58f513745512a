#include "hgs/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hgs {

HalflineOperator::HalflineOperator(double x_max, int panels,
                                   int pts_per_panel)
    : x_max_(x_max),
      panel_pts_(pts_per_panel),
      panel_width_(x_max / panels),
      base_(composite_gauss(panels, pts_per_panel, 0.0, x_max)) {
  if (!(x_max > 0.0)) throw std::invalid_argument("HalflineOperator: x_max>0");
}

namespace {

// Composite GL over [a,b] with panel width <= h_target.
double integrate_smooth(const std::function<double(double)>& f, double a,
                        double b, double h_target, int pts) {
  if (b <= a) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h_target)));
  Rule1D r = composite_gauss(panels, pts, a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * f(r.x[i]);
  return s;
}

}  // namespace

double HalflineOperator::apply(const std::function<double(double)>& psi,
                               double x,
                               const std::vector<double>& psi_kinks) const {
  // split panels at the kernel kink y = x and at declared kinks of psi
  const double h = 0.5;
  std::vector<double> cuts = {0.0, std::min(std::max(x, 0.0), x_max_), x_max_};
  for (double c : psi_kinks)
    if (c > 0.0 && c < x_max_) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    s += integrate_smooth(
        [&](double y) { return std::exp(-std::abs(x - y)) * psi(y); }, a, b,
        h, 10);
  }
  return s;
}

double HalflineOperator::apply_with_sinusoid_tail(
    const std::function<double(double)>& psi, double x, double amp,
    double omega, double phase) const {
  // int_X^inf e^{-(y-x)} amp cos(w y - b) dy
  //   = amp e^{x-X} [cos(wX-b) - w sin(wX-b)] / (1+w^2)
  const double a = omega * x_max_ - phase;
  const double tail = amp * std::exp(x - x_max_) *
                      (std::cos(a) - omega * std::sin(a)) /
                      (1.0 + omega * omega);
  return apply(psi, x) + tail;
}

double HalflineOperator::inner(const std::function<double(double)>& f,
                               const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < base_.size(); ++i)
    s += base_.w[i] * f(base_.x[i]) * g(base_.x[i]);
  return s;
}

double halfline_eigenfunction(double omega, double x) {
  if (omega == 0.0) return 0.0;  // pointwise omega->0 limit
  return (std::sin(omega * x) + omega * std::cos(omega * x)) /
         std::sqrt(1.0 + omega * omega);
}

double halfline_eigenvalue(double omega) {
  return 2.0 / (1.0 + omega * omega);
}

double halfline_phase(double omega) {
  return std::atan2(1.0, omega);  // arccot
}

double halfline_iterated2(double x, double y) {
  const double d = std::abs(x - y);
  return std::exp(-d) * (1.0 + d) - 0.5 * std::exp(-(x + y));
}

double halfline_iterated_resolution(double x, double y, int t,
                                    double omega_max, int omega_nodes) {
  Rule1D r = composite_gauss(omega_nodes / 4, 4, 0.0, omega_max);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double w = r.x[i];
    s += r.w[i] * std::pow(halfline_eigenvalue(w), t) *
         halfline_eigenfunction(w, x) * halfline_eigenfunction(w, y);
  }
  return 2.0 / std::numbers::pi * s;
}

ParsevalPair halfline_parseval(const HalflineOperator& op,
                               const std::function<double(double)>& f,
                               const std::function<double(double)>& g,
                               double omega_max, int omega_nodes) {
  if (!halfline_admissible(f) || !halfline_admissible(g))
    throw std::invalid_argument(
        "halfline_parseval: test function violates phi(0) = phi'(0)");
  auto hat = [&](const std::function<double(double)>& u, double w) {
    return op.inner(u, [&](double x) { return halfline_eigenfunction(w, x); });
  };
  Rule1D r = composite_gauss(omega_nodes / 4, 4, 0.0, omega_max);
  ParsevalPair p;
  for (std::size_t i = 0; i < r.size(); ++i)
    p.spectral += r.w[i] * hat(f, r.x[i]) * hat(g, r.x[i]);
  p.spectral *= 2.0 / std::numbers::pi;
  p.direct = op.inner(f, g);
  return p;
}

bool halfline_admissible(const std::function<double(double)>& f,
                         double tol) {
  const double h = 1e-5;
  const double d0 = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
  return std::abs(f(0.0) - d0) <= tol * std::max(1.0, std::abs(f(0.0)));
}

}  // namespace hgs
