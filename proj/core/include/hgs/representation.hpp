#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "hgs/minkowski.hpp"
#include "hgs/quadrature.hpp"

namespace hgs {

using cplx = std::complex<double>;

// Principal plane wave eps_{omega,p}(q) = (q0 - q_vec.p)^{-(N-1)/2 - i omega};
// the base is > 0 everywhere on H_N, so no branch ambiguity.
cplx plane_wave(double omega, const Eigen::VectorXd& p, const HPoint& q);

// Plancherel density d(omega) = (2pi)^{-N} |Gamma((N-1)/2+i w)/Gamma(i w)|^2,
// evaluated through the closed forms
//   N odd : (2pi)^{-N} w^2 prod_{j=1}^{(N-3)/2} (j^2 + w^2)
//   N even: (2pi)^{-N} w tanh(pi w) prod_{j=0}^{N/2-2} ((j+1/2)^2 + w^2).
double plancherel_density(double omega, int N);

// Real spherical harmonics with unit L^2(dS) norm, dS unnormalized.
// N=2 (circle): m_idx 0 -> 1/sqrt(2pi) for ell=0; for ell>=1 m_idx 0 is
// cos(ell phi)/sqrt(pi), m_idx 1 is sin(ell phi)/sqrt(pi).
// N=3: m_idx in [0, 2*ell], ordered (m=0, cos 1, sin 1, cos 2, sin 2, ...).
// The polar axis is the first component of p (the M-fixed axis).
double real_sphere_harmonic(int N, int ell, int m_idx, const Eigen::VectorXd& p);
int sphere_harmonic_count(int N, int ell);  // number of m indices at fixed ell

// ell-mode circle profile for N=2 (raw, complex):
//   C_ell(omega, r) = int_0^{2pi} cos(ell u) (cosh r - sinh r cos u)^{-1/2-iw} du.
// Its phase is r-independent: C_ell = e^{i a_ell(w)} rho_ell(w,r) with rho
// real and a_ell = arg Gamma(ell+1/2+iw) - arg Gamma(1/2+iw).
cplx circle_mode_integral(double omega, int ell, double r, int order = 256);

// a_ell(w) = sum_{j=0}^{ell-1} atan2(w, (N-1)/2 + j); removing it from the
// raw sphere transform of the plane wave yields the real eigenfunctions.
double conical_phase(int N, int ell, double omega);

// rho_ell(w,r) = Re[e^{-i a_ell} C_ell], the real radial profile (N=2).
double circle_mode_real(double omega, int ell, double r, int order = 256);

// E_{omega,ell m}(q) = int dS(p) Y_{ell m}(p) eps_{omega,p}(q) by sphere
// quadrature. Throws if order < 2*ell + 8. Returns the real value; the
// imaginary residue is written to *imag_residue when non-null.
double radial_eigenfunction(double omega, int ell, int m_idx, const HPoint& q,
                            int N, int order = 0,
                            double* imag_residue = nullptr);

// Sphere average of the plane wave at "radial argument" c >= 1:
//   S(omega, c) = int dS(p) (c - sqrt(c^2-1) s.p)^{-(N-1)/2 - i omega},
// independent of the unit vector s; equals the addition-theorem RHS.
double conical_average(double omega, double c, int N, int order = 256);

// | sum_{ell<=L,m} E_{w,ell m}(q) E_{w,ell m}(q') - S(w, q.q') |.
double addition_theorem_residual(double omega, const HPoint& q,
                                 const HPoint& qp, int L, int order = 256);

// Truncated function on K in the compact model of pi_{omega,0}.
// N=2: Fourier coefficients c_m, m = -L..L, wrt e^{i m phi} and the
// normalized Haar measure dphi/2pi. N=3: real spherical-harmonic
// coefficients of the M-invariant representative on S^2 = M\K.
struct KFunction {
  int N = 2;
  int L = 32;
  Eigen::VectorXcd coeff;

  double norm_sq() const { return coeff.squaredNorm(); }
  static KFunction constant(int N, int L);  // the K-invariant unit vector
  static KFunction zero(int N, int L);
  // N=2 evaluation at angle phi; N=3 at p on S^2.
  cplx eval_angle(double phi) const;
  cplx eval_point(const Eigen::VectorXd& p) const;
};

// [pi_{omega,0}(g) f](k) = delta(a(kg))^{-1} nu_omega(a(kg)) f(g[k]) on an
// oversampled grid, reprojected to the truncation. aliasing_out (if non-null)
// receives the fraction of output energy above the truncation.
KFunction principal_action(double omega, const LorentzElement& g,
                           const KFunction& f, int oversample = 4,
                           double* aliasing_out = nullptr);

// (00,00) matrix element of pi_{omega,0}; K-spherical, p(e)=1.
cplx spherical_matrix_element(double omega, const LorentzElement& g, int N,
                              int k_order = 256);

// Helgason-Fourier data of a function on H_N (N=2 implementation).
struct HelgasonCoefficients {
  int N = 2;
  int L = 16;
  Rule1D omega_rule;          // nodes/weights on [0, omega_max]
  Eigen::MatrixXd coeff;      // (n_omega) x (2L+1) mode coefficients

  void write_csv(std::ostream& os) const;
};

// psi given by samples on the hyperboloid rule (values[i] at rule.q[i]).
HelgasonCoefficients helgason_transform(const std::vector<double>& values,
                                        const HyperboloidRule& rule, int L,
                                        double omega_max = 8.0,
                                        int omega_nodes = 160);

// Synthesis psi(q) ~ int dw d(w) sum_{ell m} psihat E_{w,ell m}(q).
double helgason_synthesis(const HelgasonCoefficients& hc, const HPoint& q);

// Parseval sums: {int |psi|^2 dgamma (on rule), int dw d(w) sum |psihat|^2}.
std::pair<double, double> helgason_parseval(
    const std::vector<double>& values, const HyperboloidRule& rule,
    const HelgasonCoefficients& hc);

// Kernel E_I(c) of the spectral projector onto omega in [lo, hi].
double spectral_projector_kernel(double lo, double hi, double c, int N,
                                 int omega_nodes = 64, int sphere_order = 256);

}  // namespace hgs
