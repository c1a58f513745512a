#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hgs/gauss.hpp"
#include "hgs/special.hpp"

using namespace hgs;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  Rule1D r = gauss_legendre(8, 0.0, 2.0);
  double s = r.integrate([](double x) { return x * x * x * x * x; });
  CHECK(s == doctest::Approx(32.0 / 3.0).epsilon(1e-13));
  // degree 2n-1 = 15 still exact
  s = r.integrate([](double x) { return std::pow(x - 1.0, 15.0); });
  CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre weights sum to interval length") {
  for (int n : {1, 2, 7, 33, 160}) {
    Rule1D r = gauss_legendre(n, -3.0, 5.0);
    double s = 0.0;
    for (double w : r.w) s += w;
    CHECK(s == doctest::Approx(8.0).epsilon(1e-14));
  }
}

TEST_CASE("composite rule handles exponentials to near machine precision") {
  Rule1D r = composite_gauss(80, 10, 0.0, 40.0);
  const double s = r.integrate([](double x) { return std::exp(-x); });
  CHECK(s == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-14));
}

TEST_CASE("uniform circle rule is exact for low trigonometrics") {
  Rule1D c = uniform_circle(16);
  double s = c.integrate([](double p) { return std::cos(7.0 * p); });
  CHECK(std::abs(s) < 1e-13);
  s = c.integrate([](double p) { return std::pow(std::sin(p), 2.0); });
  CHECK(s == doctest::Approx(std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("scaled bessel I0 against the defining integral") {
  // I0(x) = (1/pi) int_0^pi e^{x cos t} dt
  Rule1D r = gauss_legendre(200, 0.0, std::numbers::pi);
  for (double x : {0.0, 0.5, 3.0, 17.0, 39.9, 40.1, 80.0, 700.0}) {
    const double ref =
        r.integrate([&](double t) { return std::exp(x * (std::cos(t) - 1.0)); }) /
        std::numbers::pi;
    CHECK(i0_scaled(x) == doctest::Approx(ref).epsilon(5e-13));
  }
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}
