#pragma once

#include <functional>
#include <vector>

#include "hgs/gauss.hpp"

namespace hgs {

// Integral operator (T psi)(x) = int_0^inf e^{-|x-y|} psi(y) dy on L^2(R_+).
// Spectrum [0,2], generalized eigenfunctions psi_omega with
// lambda(omega) = 2/(1+omega^2); no generalized ground state exists.
class HalflineOperator {
 public:
  explicit HalflineOperator(double x_max = 40.0, int panels = 2000,
                            int pts_per_panel = 3);

  double x_max() const { return x_max_; }
  const Rule1D& grid() const { return base_; }

  // Quadrature of int_0^{x_max}, panels split at the kink y=x and at any
  // declared kinks of psi. The tail beyond x_max is dropped; admissible psi
  // must decay within the window.
  double apply(const std::function<double(double)>& psi, double x,
               const std::vector<double>& psi_kinks = {}) const;

  // Same, plus the closed-form tail for psi(y) = amp*cos(omega*y - phase)
  // on y >= x_max (the kernel tail e^{-(y-x)} integrates exactly).
  double apply_with_sinusoid_tail(const std::function<double(double)>& psi,
                                  double x, double amp, double omega,
                                  double phase) const;

  // Inner product int_0^{x_max} f g on the base rule.
  double inner(const std::function<double(double)>& f,
               const std::function<double(double)>& g) const;

 private:
  double x_max_;
  int panel_pts_;
  double panel_width_;
  Rule1D base_;
};

// psi_omega(x) = (sin wx + w cos wx)/sqrt(1+w^2) = cos(wx - b), b = arccot w;
// sup norm 1, satisfies psi(0) = psi'(0).
double halfline_eigenfunction(double omega, double x);
double halfline_eigenvalue(double omega);  // 2/(1+omega^2)
double halfline_phase(double omega);       // b = arccot(omega)

// Closed form of the t=2 iterated kernel:
// e^{-|x-y|}(1+|x-y|) - e^{-(x+y)}/2.
double halfline_iterated2(double x, double y);

// Iterated kernel via the spectral resolution
// (2/pi) int dw (2/(1+w^2))^t psi_w(x) psi_w(y).
double halfline_iterated_resolution(double x, double y, int t,
                                    double omega_max = 60.0,
                                    int omega_nodes = 4000);

// Transform pair entering Parseval: fhat(w) = int_0^inf f psi_w.
// Returns {(2/pi) int dw fhat ghat, int dx f g}.
struct ParsevalPair {
  double spectral = 0.0;
  double direct = 0.0;
};

ParsevalPair halfline_parseval(const HalflineOperator& op,
                               const std::function<double(double)>& f,
                               const std::function<double(double)>& g,
                               double omega_max = 40.0,
                               int omega_nodes = 2000);

// Whether a test function satisfies the admissibility condition
// phi(0) = phi'(0) (checked by a centered difference at 0+).
bool halfline_admissible(const std::function<double(double)>& f,
                         double tol = 1e-6);

}  // namespace hgs
