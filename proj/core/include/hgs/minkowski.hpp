#pragma once

#include <Eigen/Dense>

namespace hgs {

// Vector in R^{1,N} with signature (+,-,...,-); component 0 is the time axis.
using MinkVec = Eigen::VectorXd;

// u0*v0 - sum_i ui*vi.
double mink_dot(const MinkVec& u, const MinkVec& v);

// diag(1,-1,...,-1) of size (N+1)x(N+1).
Eigen::MatrixXd mink_metric(int N);

// Point on the upper hyperboloid H_N: q.q = 1, q0 > 0.
struct HPoint {
  MinkVec v;

  int N() const { return static_cast<int>(v.size()) - 1; }
  double time() const { return v(0); }
  Eigen::VectorXd spatial() const { return v.tail(v.size() - 1); }
};

// Base point q^ = (1,0,...,0).
HPoint hpoint_origin(int N);

// Validating constructor; throws if q.q != 1 or q0 <= 0 beyond tolerance.
HPoint make_hpoint(const MinkVec& v, double tol = 1e-10);

// Point at geodesic radius r, spatial direction dir (unit vector in R^N).
HPoint hpoint_polar(double r, const Eigen::VectorXd& dir);

// geodesic distance arccosh(q.q')
double geodesic_distance(const HPoint& a, const HPoint& b);

// Element of SO0(1,N) as an (N+1)x(N+1) matrix.
struct LorentzElement {
  Eigen::MatrixXd m;

  int N() const { return static_cast<int>(m.rows()) - 1; }
  HPoint act(const HPoint& q) const { return HPoint{m * q.v}; }
  LorentzElement inverse() const;
  LorentzElement operator*(const LorentzElement& o) const {
    return LorentzElement{m * o.m};
  }
};

LorentzElement lorentz_identity(int N);

// Checks g^T eta g = eta, det g = 1, g00 >= 1.
bool is_lorentz(const Eigen::MatrixXd& m, double tol = 1e-10);
LorentzElement make_lorentz(const Eigen::MatrixXd& m, double tol = 1e-10);

// Boost a(theta) in the 0-1 plane and nilpotent n(t), t in R^{N-1}.
LorentzElement boost_a(int N, double theta);
LorentzElement nilpotent_n(const Eigen::VectorXd& t);

// Embeds k in SO(N) as 1 (+) k acting on the spatial block.
LorentzElement embed_rotation(const Eigen::MatrixXd& k);

// SO(2) rotation by angle phi embedded in SO0(1,2).
LorentzElement rotation_so12(double phi);

// Pure boost g_s(q) mapping q^ to q; symmetric positive matrix.
LorentzElement boost_section(const HPoint& q);

// Unique factorization g = n(t) a(theta) k.
struct IwasawaCoords {
  double theta = 0.0;
  Eigen::VectorXd t;      // size N-1
  Eigen::MatrixXd k;      // N x N orthogonal, det 1
};

IwasawaCoords iwasawa_decompose(const LorentzElement& g);
LorentzElement iwasawa_compose(int N, const IwasawaCoords& c);

// Wigner rotation k_s(g,q) = g_s(q)^{-1} g^{-1} g_s(g q); returns the SO(N)
// block.
Eigen::MatrixXd wigner_cocycle(const LorentzElement& g, const HPoint& q);

// Horospherical chart: q = n(t) a(theta) q^.
HPoint horospherical_to_point(double theta, const Eigen::VectorXd& t);

struct Horospherical {
  double theta = 0.0;
  Eigen::VectorXd t;
  bool degenerate = false;  // set when q is numerically at the base point
};

Horospherical point_to_horospherical(const HPoint& q);

}  // namespace hgs
