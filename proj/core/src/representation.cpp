#include "hgs/representation.hpp"

#include <cmath>
#include <vector>
#include <numbers>
#include <stdexcept>

#include "hgs/special.hpp"

namespace hgs {

namespace {
constexpr double kPi = std::numbers::pi;
}

cplx plane_wave(double omega, const Eigen::VectorXd& p, const HPoint& q) {
  if (p.size() != q.N())
    throw std::invalid_argument("plane_wave: direction dimension mismatch");
  const double base = q.time() - q.spatial().dot(p);
  const double ex = -0.5 * (q.N() - 1);
  // base^(ex - i w) = base^ex * e^{-i w log base}, base > 0 on H_N
  const double lb = std::log(base);
  return std::pow(base, ex) * std::exp(cplx(0.0, -omega * lb));
}

double plancherel_density(double omega, int N) {
  if (N < 2) throw std::invalid_argument("plancherel_density: N >= 2");
  const double w2 = omega * omega;
  double prod = 1.0;
  if (N % 2 == 1) {
    prod = w2;
    for (int j = 1; j <= (N - 3) / 2; ++j) prod *= j * j + w2;
  } else {
    prod = omega * std::tanh(kPi * omega);
    for (int j = 0; j <= N / 2 - 2; ++j)
      prod *= (j + 0.5) * (j + 0.5) + w2;
  }
  return prod * std::pow(2.0 * kPi, -N);
}

int sphere_harmonic_count(int N, int ell) {
  if (N == 2) return ell == 0 ? 1 : 2;
  if (N == 3) return 2 * ell + 1;
  throw std::invalid_argument("sphere_harmonic_count: N=2,3");
}

namespace {

// Associated Legendre P_l^m(x) without Condon-Shortley phase.
double assoc_legendre(int l, int m, double x) {
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2 * m + 1) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double sph_norm(int l, int m) {
  // sqrt((2l+1)/(4pi) (l-m)!/(l+m)!)
  double r = (2.0 * l + 1.0) / (4.0 * kPi);
  for (int i = l - m + 1; i <= l + m; ++i) r /= i;
  return std::sqrt(r);
}

}  // namespace

double real_sphere_harmonic(int N, int ell, int m_idx,
                            const Eigen::VectorXd& p) {
  if (N == 2) {
    const double phi = std::atan2(p(1), p(0));
    if (ell == 0) return 1.0 / std::sqrt(2.0 * kPi);
    if (m_idx == 0) return std::cos(ell * phi) / std::sqrt(kPi);
    return std::sin(ell * phi) / std::sqrt(kPi);
  }
  if (N == 3) {
    const double z = p(0);  // polar axis = M-fixed axis e_1
    const double phi = std::atan2(p(2), p(1));
    if (m_idx == 0) return sph_norm(ell, 0) * assoc_legendre(ell, 0, z);
    const int m = (m_idx + 1) / 2;
    const double base =
        std::sqrt(2.0) * sph_norm(ell, m) * assoc_legendre(ell, m, z);
    return (m_idx % 2 == 1) ? base * std::cos(m * phi)
                            : base * std::sin(m * phi);
  }
  throw std::invalid_argument("real_sphere_harmonic: N=2,3");
}

namespace {

// Panels on [0, pi]: geometric grading into the u=0 peak (scale ~ e^{-r})
// plus a width cap that keeps cos(ell u) resolved.
std::vector<double> peak_panel_bounds(double delta, double osc_cap) {
  std::vector<double> geo = {kPi};
  while (geo.back() > delta) geo.push_back(0.5 * geo.back());
  std::vector<double> bounds = {0.0};
  for (auto it = geo.rbegin(); it != geo.rend(); ++it) {
    const double lo = bounds.back(), hi = *it;
    const int parts =
        std::max(1, static_cast<int>(std::ceil((hi - lo) / osc_cap)));
    for (int p = 1; p <= parts; ++p)
      bounds.push_back(lo + (hi - lo) * p / parts);
  }
  return bounds;
}

}  // namespace

cplx circle_mode_integral(double omega, int ell, double r, int order) {
  // cosh r - sinh r cos u = e^{-r} + 2 sinh r sin^2(u/2), stable at all r;
  // the integrand peak at u=0 has width ~ e^{-r}
  (void)order;
  const double sh = std::sinh(r), em = std::exp(-r);
  const double delta =
      std::max(std::min(0.4, 2.0 * std::exp(-std::max(r, 0.0))), 1e-9);
  const double osc_cap = 1.2 * 2.0 * kPi / std::max(ell, 1);
  const std::vector<double> bounds = peak_panel_bounds(delta, osc_cap);
  const Rule1D& gb = gauss_legendre_cached(10);
  cplx s = 0.0;
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const double c = 0.5 * (bounds[b + 1] - bounds[b]);
    const double d = 0.5 * (bounds[b + 1] + bounds[b]);
    for (std::size_t i = 0; i < gb.size(); ++i) {
      const double u = c * gb.x[i] + d;
      const double sn = std::sin(0.5 * u);
      const double base = em + 2.0 * sh * sn * sn;
      const double lb = std::log(base);
      s += (c * gb.w[i]) * std::cos(ell * u) *
           (std::exp(-0.5 * lb) * std::exp(cplx(0.0, -omega * lb)));
    }
  }
  return 2.0 * s;  // integrand even in u
}

double conical_phase(int N, int ell, double omega) {
  double a = 0.0;
  for (int j = 0; j < ell; ++j) a += std::atan2(omega, 0.5 * (N - 1) + j);
  return a;
}

double circle_mode_real(double omega, int ell, double r, int order) {
  const cplx c = circle_mode_integral(omega, ell, r, order);
  return (std::exp(cplx(0.0, -conical_phase(2, ell, omega))) * c).real();
}

double radial_eigenfunction(double omega, int ell, int m_idx, const HPoint& q,
                            int N, int order, double* imag_residue) {
  if (order == 0) order = 2 * ell + 64;
  if (order < 2 * ell + 8)
    throw std::invalid_argument(
        "radial_eigenfunction: sphere order below 2*ell+8");
  SphereRule sph = sphere_rule(N, order);
  cplx s = 0.0;
  for (std::size_t i = 0; i < sph.size(); ++i)
    s += sph.w[i] * real_sphere_harmonic(N, ell, m_idx, sph.p[i]) *
         plane_wave(omega, sph.p[i], q);
  // remove the constant ell-channel phase of the raw transform
  s *= std::exp(cplx(0.0, -conical_phase(N, ell, omega)));
  if (imag_residue) *imag_residue = std::abs(s.imag());
  return s.real();
}

double conical_average(double omega, double c, int N, int order) {
  if (!(c >= 1.0)) throw std::invalid_argument("conical_average: c >= 1");
  (void)order;
  const double rho = std::acosh(c);
  const double sh = std::sinh(rho), em = std::exp(-rho);
  const double ex = -0.5 * (N - 1);
  if (N == 2) {
    const double delta = std::max(std::min(0.4, 2.0 * em), 1e-9);
    const std::vector<double> bounds = peak_panel_bounds(delta, 0.8);
    const Rule1D& gb = gauss_legendre_cached(10);
    cplx s = 0.0;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
      const double c = 0.5 * (bounds[b + 1] - bounds[b]);
      const double d = 0.5 * (bounds[b + 1] + bounds[b]);
      for (std::size_t i = 0; i < gb.size(); ++i) {
        const double sn = std::sin(0.5 * (c * gb.x[i] + d));
        const double base = em + 2.0 * sh * sn * sn;
        const double lb = std::log(base);
        s += (c * gb.w[i]) * std::exp(ex * lb) *
             std::exp(cplx(0.0, -omega * lb));
      }
    }
    return 2.0 * s.real();
  }
  if (N == 3) {
    // int dS = 2 pi int_{-1}^{1} dz, base = e^{-rho} + sinh(rho) (1-z);
    // grade v = 1-z toward 0 on the peak scale e^{-rho}/sinh(rho)
    const double vpeak = std::min(2.0, std::max(em / std::max(sh, 1e-300),
                                                1e-12));
    std::vector<double> geo = {2.0};
    while (geo.back() > vpeak) geo.push_back(0.5 * geo.back());
    cplx s = 0.0;
    for (std::size_t b = 0; b + 1 < geo.size(); ++b) {
      Rule1D g = gauss_legendre(12, geo[b + 1], geo[b]);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double base = em + sh * g.x[i];
        const double lb = std::log(base);
        s += g.w[i] * std::exp(ex * lb) * std::exp(cplx(0.0, -omega * lb));
      }
    }
    {
      Rule1D g = gauss_legendre(12, 0.0, geo.back());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double base = em + sh * g.x[i];
        const double lb = std::log(base);
        s += g.w[i] * std::exp(ex * lb) * std::exp(cplx(0.0, -omega * lb));
      }
    }
    return 2.0 * kPi * s.real();
  }
  throw std::invalid_argument("conical_average: N=2,3");
}

double addition_theorem_residual(double omega, const HPoint& q,
                                 const HPoint& qp, int L, int order) {
  const int N = q.N();
  double lhs = 0.0;
  if (N == 2) {
    // factorized circle modes: E_{l,cos}(q) = cos(l phi_q) C_l / sqrt(pi)
    const Horospherical hq = point_to_horospherical(q);   // only for N
    (void)hq;
    const double rq = std::acosh(std::max(1.0, q.time()));
    const double rp = std::acosh(std::max(1.0, qp.time()));
    const double phiq = std::atan2(q.v(2), q.v(1));
    const double phip = std::atan2(qp.v(2), qp.v(1));
    for (int ell = 0; ell <= L; ++ell) {
      const double cq = circle_mode_real(omega, ell, rq, order);
      const double cp = circle_mode_real(omega, ell, rp, order);
      if (ell == 0)
        lhs += cq * cp / (2.0 * kPi);
      else
        lhs += cq * cp * std::cos(ell * (phiq - phip)) / kPi;
    }
  } else {
    for (int ell = 0; ell <= L; ++ell)
      for (int m = 0; m < sphere_harmonic_count(N, ell); ++m)
        lhs += radial_eigenfunction(omega, ell, m, q, N, 2 * L + 64) *
               radial_eigenfunction(omega, ell, m, qp, N, 2 * L + 64);
  }
  const double rhs = conical_average(omega, mink_dot(q.v, qp.v), N, order);
  return std::abs(lhs - rhs);
}

KFunction KFunction::constant(int N, int L) {
  KFunction f;
  f.N = N;
  f.L = L;
  if (N == 2) {
    f.coeff = Eigen::VectorXcd::Zero(2 * L + 1);
    f.coeff(L) = 1.0;  // m = 0
  } else {
    int total = 0;
    for (int l = 0; l <= L; ++l) total += sphere_harmonic_count(N, l);
    f.coeff = Eigen::VectorXcd::Zero(total);
    // the constant on S^2 with (1/4pi) int dS normalization has Y_00
    // coefficient sqrt(4pi)
    f.coeff(0) = std::sqrt(4.0 * kPi);
  }
  return f;
}

KFunction KFunction::zero(int N, int L) {
  KFunction f = constant(N, L);
  f.coeff.setZero();
  return f;
}

cplx KFunction::eval_angle(double phi) const {
  if (N != 2) throw std::invalid_argument("eval_angle: N=2 only");
  cplx s = 0.0;
  for (int m = -L; m <= L; ++m)
    s += coeff(m + L) * std::exp(cplx(0.0, m * phi));
  return s;
}

cplx KFunction::eval_point(const Eigen::VectorXd& p) const {
  if (N != 3) throw std::invalid_argument("eval_point: N=3 only");
  cplx s = 0.0;
  int idx = 0;
  for (int l = 0; l <= L; ++l)
    for (int m = 0; m < sphere_harmonic_count(3, l); ++m, ++idx)
      s += coeff(idx) * real_sphere_harmonic(3, l, m, p);
  return s;
}

KFunction principal_action(double omega, const LorentzElement& g,
                           const KFunction& f, int oversample,
                           double* aliasing_out) {
  const int N = f.N;
  KFunction out = KFunction::zero(N, f.L);
  if (N == 2) {
    const int S = std::max(oversample * (2 * f.L + 2), 32);
    Eigen::VectorXcd vals(S);
    double total = 0.0;
    for (int i = 0; i < S; ++i) {
      const double phi = 2.0 * kPi * i / S;
      const LorentzElement h = rotation_so12(phi) * g;
      const IwasawaCoords iw = iwasawa_decompose(h);
      const double phi_out = std::atan2(iw.k(1, 0), iw.k(0, 0));
      const cplx mult =
          std::exp(0.5 * iw.theta) * std::exp(cplx(0.0, omega * iw.theta));
      vals(i) = mult * f.eval_angle(phi_out);
      total += std::norm(vals(i));
    }
    total /= S;
    double kept = 0.0;
    for (int m = -f.L; m <= f.L; ++m) {
      cplx c = 0.0;
      for (int i = 0; i < S; ++i)
        c += vals(i) * std::exp(cplx(0.0, -m * 2.0 * kPi * i / S));
      c /= static_cast<double>(S);
      out.coeff(m + f.L) = c;
      kept += std::norm(c);
    }
    if (aliasing_out)
      *aliasing_out = total > 0.0 ? std::max(0.0, (total - kept) / total) : 0.0;
  } else if (N == 3) {
    const int order = std::max(2, oversample) * (2 * f.L + 2);
    SphereRule sph = sphere_rule(3, order);
    std::vector<cplx> vals(sph.size());
    double total = 0.0;
    for (std::size_t i = 0; i < sph.size(); ++i) {
      // k_p maps p to e1, so k_p^{-1} e1 = p
      const Eigen::MatrixXd kp = rotation_e1_to(sph.p[i]).transpose();
      const LorentzElement h = embed_rotation(kp) * g;
      const IwasawaCoords iw = iwasawa_decompose(h);
      const Eigen::VectorXd p_out = iw.k.row(0).transpose();  // k'^{-1} e1
      const cplx mult =
          std::exp(iw.theta) * std::exp(cplx(0.0, omega * iw.theta));
      vals[i] = mult * f.eval_point(p_out);
      total += sph.w[i] * std::norm(vals[i]);
    }
    total /= 4.0 * kPi;
    double kept = 0.0;
    int idx = 0;
    for (int l = 0; l <= f.L; ++l)
      for (int m = 0; m < sphere_harmonic_count(3, l); ++m, ++idx) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < sph.size(); ++i)
          c += sph.w[i] * real_sphere_harmonic(3, l, m, sph.p[i]) * vals[i];
        out.coeff(idx) = c;
        kept += std::norm(c) / (4.0 * kPi);
      }
    if (aliasing_out)
      *aliasing_out = total > 0.0 ? std::max(0.0, (total - kept) / total) : 0.0;
  } else {
    throw std::invalid_argument("principal_action: N=2,3");
  }
  return out;
}

cplx spherical_matrix_element(double omega, const LorentzElement& g, int N,
                              int k_order) {
  if (N == 2) {
    Rule1D c = uniform_circle(k_order);
    cplx s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const IwasawaCoords iw = iwasawa_decompose(rotation_so12(c.x[i]) * g);
      s += c.w[i] * std::exp(0.5 * iw.theta) *
           std::exp(cplx(0.0, omega * iw.theta));
    }
    return s / (2.0 * kPi);
  }
  if (N == 3) {
    SphereRule sph = sphere_rule(3, k_order > 64 ? 64 : k_order);
    cplx s = 0.0;
    for (std::size_t i = 0; i < sph.size(); ++i) {
      const Eigen::MatrixXd kp = rotation_e1_to(sph.p[i]).transpose();
      const IwasawaCoords iw = iwasawa_decompose(embed_rotation(kp) * g);
      s += sph.w[i] * std::exp(iw.theta) *
           std::exp(cplx(0.0, omega * iw.theta));
    }
    return s / (4.0 * kPi);
  }
  throw std::invalid_argument("spherical_matrix_element: N=2,3");
}

void HelgasonCoefficients::write_csv(std::ostream& os) const {
  os << "omega,ell,m,re,im\n";
  for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
    int idx = 0;
    for (int l = 0; l <= L; ++l)
      for (int m = 0; m < sphere_harmonic_count(2, l); ++m, ++idx)
        os << omega_rule.x[i] << ',' << l << ',' << m << ','
           << coeff(i, idx) << ",0\n";
  }
}

namespace {

// mode index for N=2: ell=0 -> 0; ell>=1 -> 2*ell-1 (cos), 2*ell (sin)
int mode_count_n2(int L) { return 2 * L + 1; }

}  // namespace

HelgasonCoefficients helgason_transform(const std::vector<double>& values,
                                        const HyperboloidRule& rule, int L,
                                        double omega_max, int omega_nodes) {
  if (rule.N != 2)
    throw std::invalid_argument("helgason_transform: N=2 implementation");
  if (values.size() != rule.size())
    throw std::invalid_argument("helgason_transform: sample count mismatch");
  HelgasonCoefficients hc;
  hc.N = 2;
  hc.L = L;
  hc.omega_rule = gauss_legendre(omega_nodes, 0.0, omega_max);
  hc.coeff = Eigen::MatrixXd::Zero(omega_nodes, mode_count_n2(L));

  // radial profile cache: distinct radii in the rule
  std::vector<double> radii;
  std::vector<int> ridx(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = std::acosh(std::max(1.0, rule.q[i].time()));
    int found = -1;
    for (std::size_t a = 0; a < radii.size(); ++a)
      if (std::abs(radii[a] - r) < 1e-12) {
        found = static_cast<int>(a);
        break;
      }
    if (found < 0) {
      radii.push_back(r);
      found = static_cast<int>(radii.size()) - 1;
    }
    ridx[i] = found;
  }

  for (int iw = 0; iw < omega_nodes; ++iw) {
    const double w = hc.omega_rule.x[iw];
    // C_ell(w, r) per distinct radius
    Eigen::MatrixXd C(radii.size(), L + 1);
    for (std::size_t a = 0; a < radii.size(); ++a)
      for (int l = 0; l <= L; ++l)
        C(a, l) = circle_mode_real(w, l, radii[a]);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double phi = std::atan2(rule.q[i].v(2), rule.q[i].v(1));
      const double wv = rule.w[i] * values[i];
      hc.coeff(iw, 0) += wv * C(ridx[i], 0) / std::sqrt(2.0 * kPi);
      for (int l = 1; l <= L; ++l) {
        const double cl = C(ridx[i], l) / std::sqrt(kPi);
        hc.coeff(iw, 2 * l - 1) += wv * cl * std::cos(l * phi);
        hc.coeff(iw, 2 * l) += wv * cl * std::sin(l * phi);
      }
    }
  }
  return hc;
}

double helgason_synthesis(const HelgasonCoefficients& hc, const HPoint& q) {
  const double r = std::acosh(std::max(1.0, q.time()));
  const double phi = std::atan2(q.v(2), q.v(1));
  double s = 0.0;
  for (std::size_t iw = 0; iw < hc.omega_rule.size(); ++iw) {
    const double w = hc.omega_rule.x[iw];
    const double dens = plancherel_density(w, 2);
    double term = 0.0;
    for (int l = 0; l <= hc.L; ++l) {
      const double cl = circle_mode_real(w, l, r);
      if (l == 0)
        term += hc.coeff(iw, 0) * cl / std::sqrt(2.0 * kPi);
      else
        term += (hc.coeff(iw, 2 * l - 1) * std::cos(l * phi) +
                 hc.coeff(iw, 2 * l) * std::sin(l * phi)) *
                cl / std::sqrt(kPi);
    }
    s += hc.omega_rule.w[iw] * dens * term;
  }
  return s;
}

std::pair<double, double> helgason_parseval(
    const std::vector<double>& values, const HyperboloidRule& rule,
    const HelgasonCoefficients& hc) {
  double direct = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    direct += rule.w[i] * values[i] * values[i];
  double spectral = 0.0;
  for (std::size_t iw = 0; iw < hc.omega_rule.size(); ++iw)
    spectral += hc.omega_rule.w[iw] * plancherel_density(hc.omega_rule.x[iw], 2) *
                hc.coeff.row(iw).squaredNorm();
  return {direct, spectral};
}

double spectral_projector_kernel(double lo, double hi, double c, int N,
                                 int omega_nodes, int sphere_order) {
  if (hi <= lo) return 0.0;  // empty interval
  Rule1D r = gauss_legendre(omega_nodes, lo, hi);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    s += r.w[i] * plancherel_density(r.x[i], N) *
         conical_average(r.x[i], c, N, sphere_order);
  return s;
}

}  // namespace hgs
