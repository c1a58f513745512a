#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hgs/fiber.hpp"

#include "json.hpp"

namespace hgs {

// ISO(N)-invariant chain kernel built from Gaussian factors of Euclidean
// distances: T(x,y) = prod_i e^{-beta_h |x_i - y_i|^2} * sqrt(w)(x) sqrt(w)(y)
// with w = e^{-beta_w |x_i - x_j|^2} over adjacency pairs.
struct FlatKernelSpec {
  int N = 2;
  int nu = 2;
  double beta_h = 1.0;
  std::optional<double> beta_w = 1.0;
  std::vector<std::pair<int, int>> adjacency = {{0, 1}};

  nlohmann::json to_json() const;
  static FlatKernelSpec from_json(const nlohmann::json& j);
};

double flat_kernel_eval(const FlatKernelSpec& spec,
                        const std::vector<Eigen::Vector2d>& x,
                        const std::vector<Eigen::Vector2d>& y);

// Momentum-fiber kernel at xi = 0 on the collapsed relative variable
// (N=2, nu=2). Closed Gaussian form:
//   K_w(u,u') = (pi/(2 b_h)) e^{-w^2/(8 b_h)} e^{-b_h|u'-u|^2/2}
//               e^{-i w e1.(u'-u)/2} sqrt(w)(|u|) sqrt(w)(|u'|).
cplx flat_fiber_closed_form(const FlatKernelSpec& spec, double omega,
                            const Eigen::Vector2d& u,
                            const Eigen::Vector2d& up);

// The same entry through the defining translation integral
// int da T((e,a), u', u) e^{i w e1.a} by quadrature (test oracle route).
cplx flat_fiber_quadrature(const FlatKernelSpec& spec, double omega,
                           const Eigen::Vector2d& u,
                           const Eigen::Vector2d& up, double a_max = 8.0,
                           int a_order = 64);

struct FlatGridParams {
  double rho_max = 6.0;
  int radial = 16;
  int angular = 32;
};

struct FlatFiberKernel {
  double omega = 0.0;
  FlatKernelSpec spec;
  FlatGridParams params;
  std::vector<Eigen::Vector2d> nodes;
  std::vector<double> weights;   // flat polar measure rho drho dphi
  Eigen::MatrixXcd mat;          // Hermitized W^{1/2} K W^{1/2}
  double asymmetry = 0.0;
};

FlatFiberKernel flat_fiber_kernel(const FlatKernelSpec& spec, double omega,
                                  const FlatGridParams& params = {});

double flat_fiber_norm(const FlatFiberKernel& f, int iters = 400);

// Exact norm profile for the Gaussian family: ||T_w|| = e^{-w^2/(8 b_h)} ||T_0||.
double flat_norm_oracle_ratio(const FlatKernelSpec& spec, double omega);

NormCurve flat_norm_curve(const FlatKernelSpec& spec,
                          const std::vector<double>& omegas,
                          const FlatGridParams& params = {},
                          bool refine = true);

struct FlatGroundState {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  FlatGridParams params;
  std::vector<Eigen::Vector2d> nodes;
  Eigen::VectorXd psi;            // positive samples
  double rotational_asymmetry = 0.0;  // max relative spread over angles

  double gap() const { return lambda1 / lambda0; }
  nlohmann::json to_json() const;
};

FlatGroundState flat_ground_state(const FlatKernelSpec& spec,
                                  const FlatGridParams& params = {});

}  // namespace hgs
