#include "hgs/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hgs {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  // Newton iteration on P_n, starting from the Chebyshev-like estimate.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D base = gauss_legendre(n);
  const double c = 0.5 * (b - a), d = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    base.x[i] = c * base.x[i] + d;
    base.w[i] *= c;
  }
  return base;
}

Rule1D composite_gauss(int panels, int pts, double a, double b) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels >= 1");
  Rule1D base = gauss_legendre(pts);
  Rule1D r;
  r.x.reserve(static_cast<std::size_t>(panels) * pts);
  r.w.reserve(static_cast<std::size_t>(panels) * pts);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = 0.5 * h, d = lo + 0.5 * h;
    for (int i = 0; i < pts; ++i) {
      r.x.push_back(c * base.x[i] + d);
      r.w.push_back(c * base.w[i]);
    }
  }
  return r;
}

Rule1D uniform_circle(int n) {
  if (n < 1) throw std::invalid_argument("uniform_circle: n >= 1");
  Rule1D r;
  r.x.resize(n);
  r.w.assign(n, 2.0 * std::numbers::pi / n);
  for (int i = 0; i < n; ++i) r.x[i] = 2.0 * std::numbers::pi * i / n;
  return r;
}

const Rule1D& gauss_legendre_cached(int n) {
  switch (n) {
    case 8: {
      static const Rule1D r = gauss_legendre(8);
      return r;
    }
    case 10: {
      static const Rule1D r = gauss_legendre(10);
      return r;
    }
    case 12: {
      static const Rule1D r = gauss_legendre(12);
      return r;
    }
    case 16: {
      static const Rule1D r = gauss_legendre(16);
      return r;
    }
    default: {
      thread_local Rule1D r;
      thread_local int cached_n = -1;
      if (cached_n != n) {
        r = gauss_legendre(n);
        cached_n = n;
      }
      return r;
    }
  }
}

}  // namespace hgs
