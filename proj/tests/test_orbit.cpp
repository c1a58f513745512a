#include <cmath>
#include <random>

#include "doctest.h"
#include "hgs/orbit.hpp"
#include "hgs/quadrature.hpp"

using namespace hgs;

namespace {

HPoint rnd_point(std::mt19937_64& rng, double cap = 2.0) {
  std::uniform_real_distribution<double> ur(0.0, cap), ua(0.0, 6.2831853);
  Eigen::VectorXd dir(2);
  const double a = ua(rng);
  dir << std::cos(a), std::sin(a);
  return hpoint_polar(ur(rng), dir);
}

LorentzElement rnd_g(std::mt19937_64& rng, double cap = 1.5) {
  std::uniform_real_distribution<double> ur(-cap, cap), ua(0.0, 6.2831853);
  return rotation_so12(ua(rng)) * boost_a(2, ur(rng)) * rotation_so12(ua(rng));
}

}  // namespace

TEST_CASE("orbit split basics") {
  const HPoint up = hpoint_origin(2);
  const OrbitCoords oc = orbit_split(Config{{up, up}});
  CHECK((oc.n[0].v - up.v).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS(make_config({up}));
}

TEST_CASE("orbit split/join round trip") {
  std::mt19937_64 rng(5);
  for (int nu : {2, 3})
    for (int i = 0; i < 25; ++i) {
      Config m;
      for (int s = 0; s < nu; ++s) m.sites.push_back(rnd_point(rng, 3.0));
      const Config back = orbit_join(orbit_split(m));
      for (int s = 0; s < nu; ++s)
        CHECK((back.sites[s].v - m.sites[s].v).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("relative part transforms by the Wigner rotation only") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 25; ++i) {
    Config m;
    for (int s = 0; s < 3; ++s) m.sites.push_back(rnd_point(rng));
    const LorentzElement g = rnd_g(rng);
    const OrbitCoords a = orbit_split(diagonal_act(g, m));
    const OrbitCoords b = orbit_split(m);
    // n_i(d(g)m) = k_s(g, q1)^{-1} n_i(m), embedded rotation
    const Eigen::MatrixXd k = wigner_cocycle(g, m.sites[0]).transpose();
    for (std::size_t s = 0; s < a.n.size(); ++s) {
      const HPoint expect = embed_rotation(k).act(b.n[s]);
      CHECK((a.n[s].v - expect.v).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("measure factorization dq1 dn (Monte Carlo)") {
  // compactly supported product test function; compare the direct
  // Config-integral against the same integral in (q1, n) coordinates
  auto f1 = [](const HPoint& q) {
    const double r = std::acosh(std::max(1.0, q.time()));
    return r < 2.0 ? std::pow(std::cos(r * 3.14159265 / 4.0), 2.0) : 0.0;
  };
  auto f = [&](const Config& m) {
    return f1(m.sites[0]) * f1(m.sites[1]);
  };
  HyperboloidRule rule = hyperboloid_quadrature(2, 2.2, 24, 24, "r");
  // direct product integral
  double direct = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    for (std::size_t j = 0; j < rule.size(); ++j)
      direct += rule.w[i] * rule.w[j] * f(Config{{rule.q[i], rule.q[j]}});
  // (q1,n) coordinates: m = (q1, g_s(q1) n)
  double split = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const LorentzElement gs = boost_section(rule.q[i]);
    for (std::size_t j = 0; j < rule.size(); ++j)
      split += rule.w[i] * rule.w[j] *
               f(Config{{rule.q[i], gs.act(rule.q[j])}});
  }
  // n-support is shifted by the section: integrate n over a larger ball to
  // cover it, or rely on f's support staying inside; use relative tolerance
  // appropriate for the shared truncation
  HyperboloidRule wide = hyperboloid_quadrature(2, 4.5, 40, 40, "r");
  double split_wide = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const LorentzElement gs = boost_section(rule.q[i]);
    for (std::size_t j = 0; j < wide.size(); ++j)
      split_wide += rule.w[i] * wide.w[j] *
                    f(Config{{rule.q[i], gs.act(wide.q[j])}});
  }
  CHECK(split_wide == doctest::Approx(direct).epsilon(2e-3));
  (void)split;
}
