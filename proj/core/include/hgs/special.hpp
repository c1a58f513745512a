#pragma once

namespace hgs {

// exp(-x) * I0(x) for x >= 0. Power series below x=40, asymptotic expansion
// above; absolute accuracy ~1e-15 across the seam.
double i0_scaled(double x);

// Surface area of the unit sphere S^{N-1} in R^N: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int n_ambient);

}  // namespace hgs
