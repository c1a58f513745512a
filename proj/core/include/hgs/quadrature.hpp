#pragma once

#include <string>
#include <vector>

#include "hgs/gauss.hpp"
#include "hgs/minkowski.hpp"

#include "json.hpp"

namespace hgs {

// Generic serializable rule: coordinate tuples + positive weights.
// domain is one of "group" | "hyperboloid" | "sphere" | "circle".
struct QuadratureRule {
  std::string domain;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;

  nlohmann::json to_json() const;
  static QuadratureRule from_json(const nlohmann::json& j);
};

// Nodes on S^{N-1} subset R^N carrying the *unnormalized* surface measure
// (total weight = |S^{N-1}|). N=2: uniform circle rule, exact for
// trigonometric degree < order. N=3: Gauss x uniform product, exact for
// spherical harmonics of degree <= order.
struct SphereRule {
  int N = 2;
  std::vector<Eigen::VectorXd> p;
  std::vector<double> w;

  std::size_t size() const { return p.size(); }
  QuadratureRule generic() const;
};

SphereRule sphere_rule(int N, int order);

// Points of H_N with weights realizing the invariant measure on the
// geodesic ball r <= r_max. Radial chart: "xi" integrates
// dxi (xi^2-1)^{N/2-1} on [1, cosh r_max]; "r" integrates dr sinh^{N-1} r
// on [0, r_max] (same measure, better node placement for oscillatory
// integrands).
struct HyperboloidRule {
  int N = 2;
  std::vector<HPoint> q;
  std::vector<double> w;

  std::size_t size() const { return q.size(); }
  QuadratureRule generic() const;
};

HyperboloidRule hyperboloid_quadrature(int N, double r_max, int radial_order,
                                       int angular_order,
                                       const std::string& chart = "xi");

// Normalized Haar rule on K = SO(N) (total weight 1).
// N=2: uniform angles; N=3: Euler-angle product rule.
struct KRule {
  int N = 2;
  std::vector<Eigen::MatrixXd> k;
  std::vector<double> w;

  std::size_t size() const { return k.size(); }
};

KRule k_rule(int N, int order);

// Rule for dg = e^{-theta(N-1)} dtheta dt dk on the truncated box
// |theta| <= theta_max, |t_i| <= t_max, with normalized dk.
struct GroupRule {
  int N = 2;
  std::vector<double> theta;
  std::vector<Eigen::VectorXd> t;
  std::vector<Eigen::MatrixXd> k;
  std::vector<double> w;

  std::size_t size() const { return theta.size(); }
  LorentzElement element(std::size_t i) const;
  QuadratureRule generic() const;
};

GroupRule group_quadrature(int N, double theta_max, double t_max,
                           int theta_order, int t_order, int k_order);

// Rotation k(s) in SO(N) mapping e_1 to the unit vector s (used in the
// dk = dS(s) dm factorization).
Eigen::MatrixXd rotation_e1_to(const Eigen::VectorXd& s);

}  // namespace hgs
