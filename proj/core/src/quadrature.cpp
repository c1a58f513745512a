#include "hgs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hgs {

nlohmann::json QuadratureRule::to_json() const {
  nlohmann::json j;
  j["domain"] = domain;
  j["nodes"] = nodes;
  j["weights"] = weights;
  return j;
}

QuadratureRule QuadratureRule::from_json(const nlohmann::json& j) {
  QuadratureRule r;
  r.domain = j.at("domain").get<std::string>();
  r.nodes = j.at("nodes").get<std::vector<std::vector<double>>>();
  r.weights = j.at("weights").get<std::vector<double>>();
  for (double w : r.weights)
    if (!(w > 0.0)) throw std::invalid_argument("QuadratureRule: weight <= 0");
  return r;
}

QuadratureRule SphereRule::generic() const {
  QuadratureRule r;
  r.domain = N == 2 ? "circle" : "sphere";
  for (const auto& v : p)
    r.nodes.emplace_back(v.data(), v.data() + v.size());
  r.weights = w;
  return r;
}

SphereRule sphere_rule(int N, int order) {
  if (order < 1) throw std::invalid_argument("sphere_rule: order >= 1");
  SphereRule s;
  s.N = N;
  if (N == 2) {
    Rule1D c = uniform_circle(std::max(order, 4));
    for (std::size_t i = 0; i < c.size(); ++i) {
      Eigen::VectorXd p(2);
      p << std::cos(c.x[i]), std::sin(c.x[i]);
      s.p.push_back(p);
      s.w.push_back(c.w[i]);
    }
  } else if (N == 3) {
    const int nz = (order + 2) / 2;
    Rule1D gz = gauss_legendre(nz, -1.0, 1.0);
    Rule1D gphi = uniform_circle(std::max(2 * nz, 4));
    for (std::size_t a = 0; a < gz.size(); ++a) {
      const double z = gz.x[a];
      const double rho = std::sqrt(1.0 - z * z);
      for (std::size_t b = 0; b < gphi.size(); ++b) {
        Eigen::VectorXd p(3);
        p << z, rho * std::cos(gphi.x[b]), rho * std::sin(gphi.x[b]);
        // first component along e_1, the M-fixed axis
        s.p.push_back(p);
        s.w.push_back(gz.w[a] * gphi.w[b]);
      }
    }
  } else {
    throw std::invalid_argument("sphere_rule: only N=2,3 supported");
  }
  return s;
}

QuadratureRule HyperboloidRule::generic() const {
  QuadratureRule r;
  r.domain = "hyperboloid";
  for (const auto& h : q)
    r.nodes.emplace_back(h.v.data(), h.v.data() + h.v.size());
  r.weights = w;
  return r;
}

HyperboloidRule hyperboloid_quadrature(int N, double r_max, int radial_order,
                                       int angular_order,
                                       const std::string& chart) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("hyperboloid_quadrature: r_max > 0");
  HyperboloidRule h;
  h.N = N;
  SphereRule sph = sphere_rule(N, angular_order);
  Rule1D rad;
  std::vector<double> radw;  // radial weight factor per node
  if (chart == "xi") {
    rad = gauss_legendre(radial_order, 1.0, std::cosh(r_max));
    for (std::size_t i = 0; i < rad.size(); ++i)
      radw.push_back(std::pow(rad.x[i] * rad.x[i] - 1.0, 0.5 * N - 1.0));
  } else if (chart == "r") {
    rad = gauss_legendre(radial_order, 0.0, r_max);
    for (std::size_t i = 0; i < rad.size(); ++i) {
      radw.push_back(std::pow(std::sinh(rad.x[i]), N - 1));
      rad.x[i] = std::cosh(rad.x[i]);  // store xi
    }
  } else {
    throw std::invalid_argument("hyperboloid_quadrature: chart xi|r");
  }
  for (std::size_t i = 0; i < rad.size(); ++i) {
    const double xi = rad.x[i];
    const double rr = std::sqrt(xi * xi - 1.0);
    for (std::size_t a = 0; a < sph.size(); ++a) {
      MinkVec v(N + 1);
      v(0) = xi;
      v.tail(N) = rr * sph.p[a];
      h.q.push_back(HPoint{v});
      h.w.push_back(rad.w[i] * radw[i] * sph.w[a]);
    }
  }
  return h;
}

KRule k_rule(int N, int order) {
  KRule kr;
  kr.N = N;
  if (N == 2) {
    Rule1D c = uniform_circle(std::max(order, 4));
    for (std::size_t i = 0; i < c.size(); ++i) {
      Eigen::MatrixXd k(2, 2);
      k << std::cos(c.x[i]), -std::sin(c.x[i]), std::sin(c.x[i]),
          std::cos(c.x[i]);
      kr.k.push_back(k);
      kr.w.push_back(c.w[i] / (2.0 * std::numbers::pi));
    }
  } else if (N == 3) {
    // Euler angles k = R3(alpha) R2(beta) R3(gamma) on the spatial axes,
    // dk = dalpha d(cos beta) dgamma / (8 pi^2).
    const int na = std::max(order, 4);
    Rule1D ga = uniform_circle(na);
    Rule1D gb = gauss_legendre((order + 2) / 2, -1.0, 1.0);
    auto R3 = [](double ang) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
      m(0, 0) = std::cos(ang);
      m(0, 1) = -std::sin(ang);
      m(1, 0) = std::sin(ang);
      m(1, 1) = std::cos(ang);
      return m;
    };
    auto R2 = [](double cb) {
      const double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
      m(0, 0) = cb;
      m(0, 2) = sb;
      m(2, 0) = -sb;
      m(2, 2) = cb;
      return m;
    };
    for (std::size_t a = 0; a < ga.size(); ++a)
      for (std::size_t b = 0; b < gb.size(); ++b)
        for (std::size_t c = 0; c < ga.size(); ++c) {
          kr.k.push_back(R3(ga.x[a]) * R2(gb.x[b]) * R3(ga.x[c]));
          kr.w.push_back(ga.w[a] * gb.w[b] * ga.w[c] /
                         (8.0 * std::numbers::pi * std::numbers::pi));
        }
  } else {
    throw std::invalid_argument("k_rule: only N=2,3 supported");
  }
  return kr;
}

LorentzElement GroupRule::element(std::size_t i) const {
  return nilpotent_n(t[i]) * boost_a(N, theta[i]) * embed_rotation(k[i]);
}

QuadratureRule GroupRule::generic() const {
  QuadratureRule r;
  r.domain = "group";
  for (std::size_t i = 0; i < size(); ++i) {
    std::vector<double> tup;
    tup.push_back(theta[i]);
    for (Eigen::Index a = 0; a < t[i].size(); ++a) tup.push_back(t[i](a));
    for (Eigen::Index a = 0; a < k[i].rows(); ++a)
      for (Eigen::Index b = 0; b < k[i].cols(); ++b)
        tup.push_back(k[i](a, b));
    r.nodes.push_back(std::move(tup));
  }
  r.weights = w;
  return r;
}

GroupRule group_quadrature(int N, double theta_max, double t_max,
                           int theta_order, int t_order, int k_order) {
  if (!(theta_max > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("group_quadrature: positive truncations");
  GroupRule g;
  g.N = N;
  Rule1D gth = gauss_legendre(theta_order, -theta_max, theta_max);
  Rule1D gt = gauss_legendre(t_order, -t_max, t_max);
  KRule kr = k_rule(N, k_order);
  const int tdim = N - 1;
  std::vector<Eigen::VectorXd> tnodes;
  std::vector<double> tweights;
  if (tdim == 1) {
    for (std::size_t i = 0; i < gt.size(); ++i) {
      tnodes.push_back(Eigen::VectorXd::Constant(1, gt.x[i]));
      tweights.push_back(gt.w[i]);
    }
  } else if (tdim == 2) {
    for (std::size_t i = 0; i < gt.size(); ++i)
      for (std::size_t j = 0; j < gt.size(); ++j) {
        Eigen::VectorXd t(2);
        t << gt.x[i], gt.x[j];
        tnodes.push_back(t);
        tweights.push_back(gt.w[i] * gt.w[j]);
      }
  } else {
    throw std::invalid_argument("group_quadrature: only N=2,3 supported");
  }
  for (std::size_t a = 0; a < gth.size(); ++a) {
    const double jac = std::exp(-gth.x[a] * (N - 1));
    for (std::size_t b = 0; b < tnodes.size(); ++b)
      for (std::size_t c = 0; c < kr.size(); ++c) {
        g.theta.push_back(gth.x[a]);
        g.t.push_back(tnodes[b]);
        g.k.push_back(kr.k[c]);
        g.w.push_back(gth.w[a] * jac * tweights[b] * kr.w[c]);
      }
  }
  return g;
}

Eigen::MatrixXd rotation_e1_to(const Eigen::VectorXd& s) {
  const int N = static_cast<int>(s.size());
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(N);
  e1(0) = 1.0;
  Eigen::VectorXd u = s / s.norm();
  const double c = u.dot(e1);
  Eigen::VectorXd v = u - c * e1;
  const double vn = v.norm();
  if (vn < 1e-14) {
    if (c > 0.0) return Eigen::MatrixXd::Identity(N, N);
    // antipode: rotate by pi in the (e1,e2) plane
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N, N);
    m(0, 0) = -1.0;
    m(1, 1) = -1.0;
    return m;
  }
  v /= vn;
  // Givens rotation in span{e1,v} taking e1 to u.
  const double sn = vn;  // sin of the angle, since |u|=1
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(N, N);
  m += (c - 1.0) * (e1 * e1.transpose() + v * v.transpose());
  m += sn * (v * e1.transpose() - e1 * v.transpose());
  return m;
}

}  // namespace hgs
