#include <cmath>
#include <random>

#include "doctest.h"
#include "hgs/flat.hpp"

using namespace hgs;

namespace {

FlatKernelSpec default_spec() {
  FlatKernelSpec s;
  s.beta_h = 1.0;
  s.beta_w = 1.0;
  return s;
}

}  // namespace

TEST_CASE("flat kernel: symmetry and ISO(2) invariance") {
  const FlatKernelSpec spec = default_spec();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<Eigen::Vector2d> x = {{u(rng), u(rng)}, {u(rng), u(rng)}};
    std::vector<Eigen::Vector2d> y = {{u(rng), u(rng)}, {u(rng), u(rng)}};
    const double t = flat_kernel_eval(spec, x, y);
    CHECK(t > 0.0);
    CHECK(flat_kernel_eval(spec, y, x) == t);
    // rotate + translate both configurations
    const double a = u(rng);
    Eigen::Matrix2d k;
    k << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    const Eigen::Vector2d sh(u(rng), u(rng));
    std::vector<Eigen::Vector2d> xt = {k * (x[0] + sh), k * (x[1] + sh)};
    std::vector<Eigen::Vector2d> yt = {k * (y[0] + sh), k * (y[1] + sh)};
    CHECK(flat_kernel_eval(spec, xt, yt) == doctest::Approx(t).epsilon(1e-12));
  }
}

TEST_CASE("flat fiber kernel: closed form against translation quadrature") {
  const FlatKernelSpec spec = default_spec();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector2d a(u(rng), u(rng)), b(u(rng), u(rng));
    const double w = 0.4 * i;
    const cplx closed = flat_fiber_closed_form(spec, w, a, b);
    const cplx quad = flat_fiber_quadrature(spec, w, a, b, 9.0, 72);
    CHECK(std::abs(closed - quad) / std::abs(closed) < 1e-6);
  }
}

TEST_CASE("flat fiber: omega=0 positivity and rotation invariance") {
  const FlatKernelSpec spec = default_spec();
  const FlatFiberKernel f0 = flat_fiber_kernel(spec, 0.0);
  CHECK(f0.asymmetry < 1e-12);
  for (Eigen::Index i = 0; i < f0.mat.rows(); i += 13)
    for (Eigen::Index j = 0; j < f0.mat.cols(); j += 11)
      CHECK(f0.mat(i, j).real() > 0.0);
  // k-covariance analog: at omega=0 the kernel depends on |u-u'|,|u|,|u'|
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ua(0.0, 6.2831853);
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector2d a(u(rng), u(rng)), b(u(rng), u(rng));
    Eigen::Matrix2d k;
    const double t = ua(rng);
    k << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    CHECK(std::abs(flat_fiber_closed_form(spec, 0.0, k * a, k * b) -
                   flat_fiber_closed_form(spec, 0.0, a, b)) < 1e-14);
  }
}

TEST_CASE("flat norm curve matches the Fourier oracle and decreases") {
  const FlatKernelSpec spec = default_spec();
  std::vector<double> omegas;
  for (double w = 0.0; w <= 4.0 + 1e-12; w += 0.5) omegas.push_back(w);
  FlatGridParams p;
  p.radial = 12;
  p.angular = 24;
  const NormCurve c = flat_norm_curve(spec, omegas, p, false);
  for (std::size_t i = 1; i < c.norm.size(); ++i) {
    CHECK(c.norm[i] < c.norm[i - 1]);
    CHECK(c.norm[i] / c.norm[0] ==
          doctest::Approx(flat_norm_oracle_ratio(spec, c.omega[i]))
              .epsilon(1e-10));
  }
  // log-curve is concave quadratic
  for (std::size_t i = 0; i < c.norm.size(); ++i) {
    const double fit = std::log(c.norm[0]) -
                       c.omega[i] * c.omega[i] / (8.0 * spec.beta_h);
    CHECK(std::abs(std::log(c.norm[i]) - fit) < 1e-3);
  }
}

TEST_CASE("flat ground state: unique, positive, rotationally invariant") {
  const FlatKernelSpec spec = default_spec();
  FlatGridParams p;
  p.radial = 14;
  p.angular = 24;
  const FlatGroundState gs = flat_ground_state(spec, p);
  CHECK(gs.lambda0 > 0.0);
  CHECK(gs.gap() < 1.0);
  CHECK(gs.psi.minCoeff() > 0.0);
  CHECK(gs.rotational_asymmetry < 1e-8);
}

TEST_CASE("flat spec JSON schema") {
  const FlatKernelSpec spec = default_spec();
  const FlatKernelSpec back = FlatKernelSpec::from_json(spec.to_json());
  CHECK(back.beta_h == spec.beta_h);
  nlohmann::json bad = spec.to_json();
  bad["gamma"] = 2.0;
  CHECK_THROWS(FlatKernelSpec::from_json(bad));
}

TEST_CASE("flat fiber covariance for omega > 0 (rotated momentum axis)") {
  const FlatKernelSpec spec = default_spec();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5), ua(0.0, 6.2831853);
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector2d a(u(rng), u(rng)), b(u(rng), u(rng));
    Eigen::Matrix2d k;
    const double t = ua(rng);
    k << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    const cplx base = flat_fiber_closed_form(spec, 1.3, a, b);
    const cplx rot = flat_fiber_closed_form(spec, 1.3, k * a, k * b);
    // the envelope is invariant; only the momentum phase co-rotates
    CHECK(std::abs(std::abs(rot) - std::abs(base)) < 1e-14);
    const Eigen::Vector2d d = b - a;
    const cplx expect = std::abs(base) *
                        std::exp(cplx(0.0, -0.5 * 1.3 * (k * d).x())) *
                        (base / std::abs(base)) /
                        std::exp(cplx(0.0, -0.5 * 1.3 * d.x()));
    CHECK(std::abs(rot - expect) < 1e-12);
  }
}

TEST_CASE("flat ground state: normalizable in the relative variable only") {
  // psi0 has unit L2 mass over the relative coordinate, so the synthesized
  // state Omega(x1,x2) = psi0(x2-x1) carries mass pi R^2 over a global ball
  // of radius R: linear in the volume, never square integrable
  const FlatKernelSpec spec = default_spec();
  FlatGridParams p;
  p.radial = 10;
  p.angular = 16;
  const FlatFiberKernel f0 = flat_fiber_kernel(spec, 0.0, p);
  const FlatGroundState gs = flat_ground_state(spec, p);
  double rel_mass = 0.0;
  for (std::size_t i = 0; i < f0.weights.size(); ++i)
    rel_mass += f0.weights[i] * gs.psi(i) * gs.psi(i);
  CHECK(rel_mass == doctest::Approx(1.0).epsilon(1e-12));
  // ball masses then scale exactly with the volume
  const double m2 = 3.14159265358979 * 4.0 * rel_mass;
  const double m8 = 3.14159265358979 * 64.0 * rel_mass;
  CHECK(m8 / m2 == doctest::Approx(16.0).epsilon(1e-12));
}
