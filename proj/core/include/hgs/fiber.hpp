#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "hgs/representation.hpp"
#include "hgs/transfer.hpp"

namespace hgs {

// Discretization parameters for the relative-space grid and the NA integral
// behind the fiber kernels (N=2, nu=2; the M-factor is trivial and the
// equivariance collapses functions on N x K to functions of one H_2 point).
struct FiberGridParams {
  double r_max = 6.0;
  int radial = 16;
  int angular = 32;
  double theta_max = 8.0;
  int theta_order = 48;

  FiberGridParams refined(double factor = 1.5) const;
};

// Fiber operator T_{omega,xi=0} as a dense Hermitian matrix on the collapsed
// relative grid, weights folded in symmetrically.
struct FiberKernelGrid {
  double omega = 0.0;
  KernelSpec spec;
  HyperboloidRule grid;
  FiberGridParams params;
  Eigen::MatrixXcd mat;     // Hermitized W^{1/2} K W^{1/2}
  double asymmetry = 0.0;   // max |B - B^dagger| before Hermitization

  // Raw kernel K_omega(u,u') = int_{NA} d(na) T(na, u', u) e^{theta(N-1)/2}
  // e^{i omega theta}; the t-integral is an exact Gaussian for the
  // exponential families, theta is quadratured.
  cplx kernel(const HPoint& u, const HPoint& up) const;

  // Uncollapsed evaluation T_{w0}(n,n';k,k') = K_w(k n, k' n').
  cplx kernel_nk(const HPoint& n, const HPoint& np, double k_angle,
                 double kp_angle) const;
};

FiberKernelGrid fiber_kernel(const KernelSpec& spec, double omega,
                             const FiberGridParams& params = {});

// Direct P-integral route (theta x t quadrature, no collapsed shortcut);
// test oracle for the Gaussian t-reduction and the covariance checks.
cplx fiber_kernel_direct(const KernelSpec& spec, double omega,
                         const HPoint& n, const HPoint& np, double k_angle,
                         double kp_angle, int theta_order = 64,
                         int t_order = 64, double theta_max = 8.0,
                         double t_max = 8.0);

// Top |eigenvalue| of the Hermitized fiber matrix (= operator norm).
double fiber_norm(const FiberKernelGrid& f, int iters = 400);

struct NormCurve {
  std::vector<double> omega;
  std::vector<double> norm;
  std::vector<double> err;  // grid-refinement error estimate

  std::size_t argmax() const;
  void write_csv(std::ostream& os) const;
};

NormCurve norm_curve(const KernelSpec& spec, const std::vector<double>& omegas,
                     const FiberGridParams& params = {}, bool refine = true,
                     int threads = 2);

// Perron-Frobenius data of T_00.
struct GroundStateField {
  double lambda0 = 0.0;
  double lambda1 = 0.0;  // second |eigenvalue|, gap = lambda1/lambda0
  HyperboloidRule grid;
  FiberGridParams params;
  Eigen::VectorXd psi;  // positive samples of the collapsed eigenfunction
  double residual = 0.0;  // |B v - lambda v| / lambda

  double gap() const { return lambda1 / lambda0; }
  nlohmann::json to_json() const;
};

GroundStateField ground_state_00(const KernelSpec& spec,
                                 const FiberGridParams& params = {});

// Interpolator for the collapsed eigenfunction on the (r,phi) tensor grid:
// trigonometric in the angle, barycentric Lagrange in the radius.
class FieldInterpolator {
 public:
  FieldInterpolator() = default;
  FieldInterpolator(const HyperboloidRule& grid, const FiberGridParams& params,
                    const Eigen::VectorXd& values);

  double operator()(const HPoint& u) const;
  double eval_polar(double r, double phi) const;

 private:
  int n_r_ = 0, n_ang_ = 0;
  double r_max_ = 0.0;
  std::vector<double> r_nodes_, bary_w_;
  Eigen::MatrixXcd modes_;  // n_r x (n_ang) Fourier data per radius
};

// Equivariant ground state Omega synthesized from psi_0 (Eq. of the
// introduction): Omega(q,n) = int dS(p) psi0(n,p) (q0 - q.p)^{-(N-1)/2}.
class SynthesizedState {
 public:
  SynthesizedState(GroundStateField gs, int sphere_order = 64);

  const GroundStateField& ground_state() const { return gs_; }

  // psi0(n,p) = collapsed field at k(p) n, with p = k^{-1} e1.
  double psi0(const HPoint& n, const Eigen::Vector2d& p) const;

  // Omega(q, n) in the (q,n) parameterization q = g q^.
  double eval_qn(const HPoint& q, const HPoint& n) const;

  // Omega as a function on M = H_N^nu via the orbit isometry.
  double eval_config(const Config& m) const;

  // Synthesis with a general reference vector v (KFunction, N=2):
  // Omega_v(g,n) = int dphi psi0~(k(phi) n) [pi_00(g) v](phi).
  double eval_reference(const LorentzElement& g, const HPoint& n,
                        const KFunction& v) const;

  const SphereRule& sphere() const { return sph_; }

 private:
  GroundStateField gs_;
  FieldInterpolator interp_;
  SphereRule sph_;
};

SynthesizedState synthesize_ground_state(const GroundStateField& gs,
                                         int sphere_order = 64);

// max_m |[T Omega](m) - lambda0 Omega(m)| / (lambda0 Omega(m)) over sample
// configurations, [T Omega] estimated by direct quadrature over m'.
struct EigenstateReport {
  double max_rel_residual = 0.0;
  std::vector<double> residuals;
};

EigenstateReport verify_eigenstate(const KernelSpec& spec,
                                   const SynthesizedState& state,
                                   const std::vector<Config>& samples,
                                   double r_max = 6.0, int radial = 24,
                                   int angular = 16);

// Equivariance of the tau map: Omega_{v0}(d(g)m) vs Omega_{pi(g)v0} at
// phi(m), the reference vector rotated through principal_action.
struct EquivarianceReport {
  double max_rel_deviation = 0.0;
  double aliasing = 0.0;
  std::vector<double> deviations;
};

EquivarianceReport equivariance_check(const SynthesizedState& state,
                                      const std::vector<LorentzElement>& gs,
                                      const std::vector<Config>& samples,
                                      int L = 32);

}  // namespace hgs
