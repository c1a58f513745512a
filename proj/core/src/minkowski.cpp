#include "hgs/minkowski.hpp"

#include <cmath>
#include <stdexcept>

namespace hgs {

double mink_dot(const MinkVec& u, const MinkVec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("mink_dot: dimension mismatch");
  double s = u(0) * v(0);
  for (Eigen::Index i = 1; i < u.size(); ++i) s -= u(i) * v(i);
  return s;
}

Eigen::MatrixXd mink_metric(int N) {
  Eigen::MatrixXd eta = -Eigen::MatrixXd::Identity(N + 1, N + 1);
  eta(0, 0) = 1.0;
  return eta;
}

HPoint hpoint_origin(int N) {
  MinkVec v = MinkVec::Zero(N + 1);
  v(0) = 1.0;
  return HPoint{v};
}

HPoint make_hpoint(const MinkVec& v, double tol) {
  if (v.size() < 3) throw std::invalid_argument("make_hpoint: need N >= 2");
  if (!(v(0) > 0.0)) throw std::invalid_argument("make_hpoint: q0 <= 0");
  if (std::abs(mink_dot(v, v) - 1.0) > tol)
    throw std::invalid_argument("make_hpoint: q.q != 1");
  return HPoint{v};
}

HPoint hpoint_polar(double r, const Eigen::VectorXd& dir) {
  const int N = static_cast<int>(dir.size());
  MinkVec v(N + 1);
  v(0) = std::cosh(r);
  v.tail(N) = std::sinh(r) * dir / dir.norm();
  return HPoint{v};
}

double geodesic_distance(const HPoint& a, const HPoint& b) {
  const double c = mink_dot(a.v, b.v);
  return std::acosh(std::max(1.0, c));
}

LorentzElement LorentzElement::inverse() const {
  // g^{-1} = eta g^T eta
  const int n = N();
  Eigen::MatrixXd eta = mink_metric(n);
  return LorentzElement{eta * m.transpose() * eta};
}

LorentzElement lorentz_identity(int N) {
  return LorentzElement{Eigen::MatrixXd::Identity(N + 1, N + 1)};
}

bool is_lorentz(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 3) return false;
  const int N = static_cast<int>(m.rows()) - 1;
  Eigen::MatrixXd eta = mink_metric(N);
  if (((m.transpose() * eta * m) - eta).cwiseAbs().maxCoeff() > tol)
    return false;
  if (std::abs(m.determinant() - 1.0) > 1e-8) return false;
  return m(0, 0) >= 1.0 - tol;
}

LorentzElement make_lorentz(const Eigen::MatrixXd& m, double tol) {
  if (!is_lorentz(m, tol))
    throw std::invalid_argument("make_lorentz: matrix not in SO0(1,N)");
  return LorentzElement{m};
}

LorentzElement boost_a(int N, double theta) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N + 1, N + 1);
  m(0, 0) = std::cosh(theta);
  m(0, 1) = std::sinh(theta);
  m(1, 0) = std::sinh(theta);
  m(1, 1) = std::cosh(theta);
  return LorentzElement{m};
}

LorentzElement nilpotent_n(const Eigen::VectorXd& t) {
  const int N = static_cast<int>(t.size()) + 1;
  const double t2 = t.squaredNorm();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N + 1, N + 1);
  m(0, 0) = 1.0 + 0.5 * t2;
  m(0, 1) = -0.5 * t2;
  m(1, 0) = 0.5 * t2;
  m(1, 1) = 1.0 - 0.5 * t2;
  for (int i = 0; i < N - 1; ++i) {
    m(0, 2 + i) = t(i);
    m(1, 2 + i) = t(i);
    m(2 + i, 0) = t(i);
    m(2 + i, 1) = -t(i);
  }
  return LorentzElement{m};
}

LorentzElement embed_rotation(const Eigen::MatrixXd& k) {
  const int N = static_cast<int>(k.rows());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N + 1, N + 1);
  m.block(1, 1, N, N) = k;
  return LorentzElement{m};
}

LorentzElement rotation_so12(double phi) {
  Eigen::MatrixXd k(2, 2);
  k << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return embed_rotation(k);
}

LorentzElement boost_section(const HPoint& q) {
  const int N = q.N();
  Eigen::MatrixXd m(N + 1, N + 1);
  const Eigen::VectorXd s = q.spatial();
  m(0, 0) = q.time();
  m.block(0, 1, 1, N) = s.transpose();
  m.block(1, 0, N, 1) = s;
  m.block(1, 1, N, N) =
      Eigen::MatrixXd::Identity(N, N) + s * s.transpose() / (q.time() + 1.0);
  return LorentzElement{m};
}

IwasawaCoords iwasawa_decompose(const LorentzElement& g) {
  const int N = g.N();
  // k fixes q^, so g q^ = n(t) a(theta) q^; read (theta,t) off the
  // horospherical chart of the first column, then k = a^{-1} n^{-1} g.
  HPoint q{g.m.col(0)};
  const double lam = q.v(0) - q.v(1);  // e^{-theta} > 0 on H_N
  if (!(lam > 0.0))
    throw std::invalid_argument("iwasawa_decompose: not in SO0(1,N)");
  IwasawaCoords c;
  c.theta = -std::log(lam);
  c.t = q.v.tail(N - 1) / lam;
  Eigen::MatrixXd full =
      (boost_a(N, c.theta).inverse().m) * (nilpotent_n(c.t).inverse().m) * g.m;
  c.k = full.block(1, 1, N, N);
  // residual of the extraction signals a matrix outside the group; the
  // tolerance tracks the rounding of the O(|g|^2) cancellations above
  const double scale = g.m.cwiseAbs().maxCoeff();
  const double tol = std::max(1e-9, 3e-11 * scale * scale);
  Eigen::MatrixXd resid = full.col(0);
  resid(0) -= 1.0;
  if (resid.cwiseAbs().maxCoeff() > tol ||
      (c.k * c.k.transpose() - Eigen::MatrixXd::Identity(N, N))
              .cwiseAbs()
              .maxCoeff() > tol)
    throw std::invalid_argument("iwasawa_decompose: matrix not in SO0(1,N)");
  return c;
}

LorentzElement iwasawa_compose(int N, const IwasawaCoords& c) {
  return nilpotent_n(c.t) * boost_a(N, c.theta) *
         embed_rotation(c.k);
}

Eigen::MatrixXd wigner_cocycle(const LorentzElement& g, const HPoint& q) {
  const HPoint gq = g.act(q);
  Eigen::MatrixXd full =
      boost_section(q).inverse().m * g.inverse().m * boost_section(gq).m;
  return full.block(1, 1, q.N(), q.N());
}

HPoint horospherical_to_point(double theta, const Eigen::VectorXd& t) {
  const int N = static_cast<int>(t.size()) + 1;
  const double t2 = t.squaredNorm();
  MinkVec v(N + 1);
  v(0) = std::cosh(theta) + 0.5 * t2 * std::exp(-theta);
  v(1) = std::sinh(theta) + 0.5 * t2 * std::exp(-theta);
  v.tail(N - 1) = std::exp(-theta) * t;
  return HPoint{v};
}

Horospherical point_to_horospherical(const HPoint& q) {
  const int N = q.N();
  Horospherical h;
  const double lam = q.v(0) - q.v(1);
  if (std::abs(q.v(0) - 1.0) < 1e-14 && q.spatial().norm() < 1e-14) {
    h.theta = 0.0;
    h.t = Eigen::VectorXd::Zero(N - 1);
    h.degenerate = true;
    return h;
  }
  h.theta = -std::log(lam);
  h.t = q.v.tail(N - 1) / lam;
  return h;
}

}  // namespace hgs
