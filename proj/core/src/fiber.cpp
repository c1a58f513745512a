#include "hgs/fiber.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace hgs {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d rot2(double a) {
  Eigen::Matrix2d m;
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

HPoint rotate2(const HPoint& u, double a) {
  MinkVec v(3);
  v(0) = u.v(0);
  v.tail(2) = rot2(a) * u.v.tail(2);
  return HPoint{v};
}

}  // namespace

FiberGridParams FiberGridParams::refined(double factor) const {
  FiberGridParams p = *this;
  p.radial = static_cast<int>(std::lround(radial * factor));
  p.angular = static_cast<int>(std::lround(angular * factor));
  p.theta_order = static_cast<int>(std::lround(theta_order * factor));
  return p;
}

cplx FiberKernelGrid::kernel(const HPoint& u, const HPoint& up) const {
  // K_w(u,u') = sqrt(w)(u0) sqrt(w)(u'0) *
  //   int dtheta e^{-theta(N-1)/2} e^{i w theta} int dt h(c1) h(c2),
  // c1 = q^ . (na)q^, c2 = u' . (na)u; both are quadratic in t, so the
  // t-integral is an exact Gaussian for the exponential families.
  const double beta = spec.h.beta;
  const double two_shift = 2.0 * spec.h.shift();
  double wfac = 1.0;
  if (spec.w) wfac = std::sqrt((*spec.w)(u.time())) *
                     std::sqrt((*spec.w)(up.time()));
  const Rule1D& base = gauss_legendre_cached(params.theta_order);
  cplx acc = 0.0;
  const double lam_up = up.v(0) - up.v(1);
  for (std::size_t a = 0; a < base.size(); ++a) {
    const double th = params.theta_max * base.x[a];
    const double ch = std::cosh(th), sh = std::sinh(th), em = std::exp(-th);
    // v = a(theta) u
    const double v0 = ch * u.v(0) + sh * u.v(1);
    const double v1 = sh * u.v(0) + ch * u.v(1);
    const double v2 = u.v(2);
    const double lam_v = v0 - v1;
    const double D = up.v(0) * v0 - up.v(1) * v1 - up.v(2) * v2;
    const double B = lam_up * v2 - up.v(2) * lam_v;
    const double K = 0.5 * (em + lam_v * lam_up);
    // int dt exp(-beta(K t^2 + B t)) = sqrt(pi/(beta K)) e^{beta B^2/(4K)}
    const double expo =
        -beta * (ch + D) + two_shift + beta * B * B / (4.0 * K);
    const double gt = std::sqrt(kPi / (beta * K)) * std::exp(expo);
    acc += (params.theta_max * base.w[a]) *
           std::exp(-0.5 * th * (spec.N - 1)) *
           std::exp(cplx(0.0, omega * th)) * gt;
  }
  return wfac * acc;
}

cplx FiberKernelGrid::kernel_nk(const HPoint& n, const HPoint& np,
                                double k_angle, double kp_angle) const {
  return kernel(rotate2(n, k_angle), rotate2(np, kp_angle));
}

cplx fiber_kernel_direct(const KernelSpec& spec, double omega,
                         const HPoint& n, const HPoint& np, double k_angle,
                         double kp_angle, int theta_order, int t_order,
                         double theta_max, double t_max) {
  ReducedKernel rk{spec};
  Rule1D gth = gauss_legendre(theta_order, -theta_max, theta_max);
  Rule1D gt = gauss_legendre(t_order, -t_max, t_max);
  const LorentzElement kinv = rotation_so12(-kp_angle);
  const LorentzElement k = rotation_so12(k_angle);
  cplx acc = 0.0;
  for (std::size_t a = 0; a < gth.size(); ++a) {
    const double th = gth.x[a];
    const double jac = std::exp(-th * (spec.N - 1));
    const cplx mult = std::exp(0.5 * th * (spec.N - 1)) *
                      std::exp(cplx(0.0, omega * th));
    for (std::size_t b = 0; b < gt.size(); ++b) {
      const LorentzElement p =
          nilpotent_n(Eigen::VectorXd::Constant(1, gt.x[b])) *
          boost_a(spec.N, th);
      const LorentzElement arg = kinv * p * k;
      acc += gth.w[a] * gt.w[b] * jac * mult * rk.eval(arg, {np}, {n});
    }
  }
  return acc;
}

FiberKernelGrid fiber_kernel(const KernelSpec& spec, double omega,
                             const FiberGridParams& params) {
  if (spec.N != 2 || spec.nu != 2)
    throw std::invalid_argument(
        "fiber_kernel: assembled fibers implemented for N=2, nu=2");
  FiberKernelGrid f;
  f.omega = omega;
  f.spec = spec;
  f.params = params;
  f.grid = hyperboloid_quadrature(2, params.r_max, params.radial,
                                  params.angular, "r");
  const std::size_t n = f.grid.size();
  Eigen::MatrixXcd B(n, n);
  std::vector<double> sw(n);
  for (std::size_t i = 0; i < n; ++i) {
    sw[i] = std::sqrt(f.grid.w[i]);
    if (spec.w) sw[i] *= std::sqrt((*spec.w)(f.grid.q[i].time()));
  }

  // theta tables shared by all entries
  const Rule1D& base = gauss_legendre_cached(params.theta_order);
  const std::size_t nth = base.size();
  const double beta = spec.h.beta;
  const double pref = std::exp(2.0 * spec.h.shift()) *
                      std::sqrt(kPi / beta);
  std::vector<double> tch(nth), tsh(nth), tem(nth);
  std::vector<cplx> tcw(nth);
  for (std::size_t a = 0; a < nth; ++a) {
    const double th = params.theta_max * base.x[a];
    tch[a] = std::cosh(th);
    tsh[a] = std::sinh(th);
    tem[a] = std::exp(-th);
    tcw[a] = (params.theta_max * base.w[a] * pref) *
             std::exp(-0.5 * th * (spec.N - 1)) *
             std::exp(cplx(0.0, omega * th));
  }

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = std::min<unsigned>(hw, 4);
  auto rows = [&](unsigned tid) {
    for (std::size_t i = tid; i < n; i += nthreads) {
      const double u0 = f.grid.q[i].v(0), u1 = f.grid.q[i].v(1),
                   u2 = f.grid.q[i].v(2);
      for (std::size_t j = i; j < n; ++j) {
        const double w0 = f.grid.q[j].v(0), w1 = f.grid.q[j].v(1),
                     w2 = f.grid.q[j].v(2);
        const double lam_up = w0 - w1;
        cplx acc = 0.0;
        for (std::size_t a = 0; a < nth; ++a) {
          const double v0 = tch[a] * u0 + tsh[a] * u1;
          const double v1 = tsh[a] * u0 + tch[a] * u1;
          const double lam_v = v0 - v1;
          const double D = w0 * v0 - w1 * v1 - w2 * u2;
          const double Bc = lam_up * u2 - w2 * lam_v;
          const double K = 0.5 * (tem[a] + lam_v * lam_up);
          const double expo =
              -beta * (tch[a] + D) + beta * Bc * Bc / (4.0 * K);
          acc += tcw[a] * (std::exp(expo) / std::sqrt(K));
        }
        B(i, j) = sw[i] * sw[j] * acc;
        if (j > i) B(j, i) = std::conj(B(i, j));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(rows, t);
  rows(0);
  for (auto& t : pool) t.join();

  // spot-check the Hermiticity of the analytic kernel on off-grid pairs
  double asym = 0.0;
  for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 7))
    for (std::size_t j = 0; j < n; j += std::max<std::size_t>(1, n / 5)) {
      const cplx a = f.kernel(f.grid.q[i], f.grid.q[j]);
      const cplx b = f.kernel(f.grid.q[j], f.grid.q[i]);
      asym = std::max(asym, std::abs(a - std::conj(b)));
    }
  f.asymmetry = asym;
  if (n > 0 && asym > 1e-8 * B.cwiseAbs().maxCoeff())
    throw std::runtime_error("fiber_kernel: asymmetry beyond tolerance");
  f.mat = std::move(B);
  return f;
}

namespace {

// Largest |eigenvalue| of a Hermitian matrix by power iteration on M^2.
std::pair<double, Eigen::VectorXcd> hermitian_top(const Eigen::MatrixXcd& M,
                                                  int iters, double tol) {
  std::mt19937_64 rng(313);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Eigen::VectorXcd v(M.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(uni(rng), 0.0);
  v.normalize();
  double lam2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = M * v;
    Eigen::VectorXcd w2 = M * w;
    lam2 = w.squaredNorm();  // (v, M^2 v)
    const double resid = (w2 - lam2 * v).norm();
    const double n2 = w2.norm();
    if (n2 == 0.0) break;
    v = w2 / n2;
    if (resid < tol * lam2) break;
  }
  return {std::sqrt(std::max(0.0, lam2)), v};
}

}  // namespace

double fiber_norm(const FiberKernelGrid& f, int iters) {
  return hermitian_top(f.mat, iters, 1e-13).first;
}

std::size_t NormCurve::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < norm.size(); ++i)
    if (norm[i] > norm[best]) best = i;
  return best;
}

void NormCurve::write_csv(std::ostream& os) const {
  os << "omega,norm,err\n";
  for (std::size_t i = 0; i < omega.size(); ++i)
    os << omega[i] << ',' << norm[i] << ',' << err[i] << '\n';
}

NormCurve norm_curve(const KernelSpec& spec, const std::vector<double>& omegas,
                     const FiberGridParams& params, bool refine, int threads) {
  NormCurve c;
  c.omega = omegas;
  c.norm.assign(omegas.size(), 0.0);
  c.err.assign(omegas.size(), 0.0);
  const FiberGridParams fine = params.refined();
  const int nt = std::max(1, threads);
  auto work = [&](int tid) {
    for (std::size_t i = tid; i < omegas.size(); i += nt) {
      const double coarse =
          fiber_norm(fiber_kernel(spec, omegas[i], params));
      if (refine) {
        const double fval = fiber_norm(fiber_kernel(spec, omegas[i], fine));
        c.norm[i] = fval;
        c.err[i] = std::abs(fval - coarse);
      } else {
        c.norm[i] = coarse;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& t : pool) t.join();
  return c;
}

nlohmann::json GroundStateField::to_json() const {
  nlohmann::json j;
  j["lambda0"] = lambda0;
  j["lambda1"] = lambda1;
  j["gap"] = gap();
  j["residual"] = residual;
  j["grid"] = {{"type", "geodesic_polar_collapsed"},
               {"r_max", params.r_max},
               {"radial", params.radial},
               {"angular", params.angular}};
  j["psi"] = std::vector<double>(psi.data(), psi.data() + psi.size());
  return j;
}

GroundStateField ground_state_00(const KernelSpec& spec,
                                 const FiberGridParams& params) {
  FiberKernelGrid f = fiber_kernel(spec, 0.0, params);
  // omega = 0: kernel is real and strictly positive
  Eigen::MatrixXd M = f.mat.real();
  NormEstimate pe = power_iteration(M, 600, 1e-14);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows()).normalized();
  for (int it = 0; it < 600; ++it) {
    Eigen::VectorXd w = M * v;
    const double nn = w.norm();
    if (nn == 0.0) break;
    w /= nn;
    if ((w - v).norm() < 1e-15) {
      v = w;
      break;
    }
    v = w;
  }
  const double lam0 = v.dot(M * v);
  if (v.sum() < 0.0) v = -v;
  GroundStateField gs;
  gs.lambda0 = lam0;
  gs.grid = f.grid;
  gs.params = params;
  gs.residual = (M * v - lam0 * v).norm() / lam0;
  if (gs.residual > 1e-8)
    throw std::runtime_error("ground_state_00: power iteration stalled");
  // deflated second eigenvalue (by magnitude)
  Eigen::MatrixXd M1 = M - lam0 * v * v.transpose();
  gs.lambda1 = hermitian_top(M1.cast<cplx>(), 800, 1e-12).first;
  if (gs.gap() > 1.0 - 1e-6)
    throw std::runtime_error(
        "ground_state_00: degenerate top eigenvalue, discretization fault");
  gs.psi.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    gs.psi(i) = v(i) / std::sqrt(f.grid.w[i]);
    if (!(v(i) > 0.0))
      throw std::runtime_error("ground_state_00: eigenfunction not positive");
  }
  (void)pe;
  return gs;
}

FieldInterpolator::FieldInterpolator(const HyperboloidRule& grid,
                                     const FiberGridParams& params,
                                     const Eigen::VectorXd& values) {
  n_r_ = params.radial;
  n_ang_ = params.angular;
  r_max_ = params.r_max;
  if (static_cast<std::size_t>(n_r_) * n_ang_ != grid.size() ||
      values.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("FieldInterpolator: grid shape mismatch");
  r_nodes_.resize(n_r_);
  for (int i = 0; i < n_r_; ++i)
    r_nodes_[i] = std::acosh(std::max(1.0, grid.q[i * n_ang_].time()));
  // barycentric weights (normalized to unit max)
  bary_w_.assign(n_r_, 1.0);
  for (int i = 0; i < n_r_; ++i) {
    double w = 1.0;
    for (int j = 0; j < n_r_; ++j)
      if (j != i) w /= (r_nodes_[i] - r_nodes_[j]);
    bary_w_[i] = w;
  }
  double mx = 0.0;
  for (double w : bary_w_) mx = std::max(mx, std::abs(w));
  for (double& w : bary_w_) w /= mx;
  // Fourier modes per radius
  modes_ = Eigen::MatrixXcd::Zero(n_r_, n_ang_);
  for (int i = 0; i < n_r_; ++i)
    for (int m = 0; m < n_ang_; ++m) {
      cplx c = 0.0;
      for (int j = 0; j < n_ang_; ++j)
        c += values(i * n_ang_ + j) *
             std::exp(cplx(0.0, -2.0 * kPi * m * j / n_ang_));
      modes_(i, m) = c / static_cast<double>(n_ang_);
    }
}

double FieldInterpolator::operator()(const HPoint& u) const {
  return eval_polar(std::acosh(std::max(1.0, u.time())),
                    std::atan2(u.v(2), u.v(1)));
}

double FieldInterpolator::eval_polar(double r, double phi) const {
  r = std::min(std::max(r, 0.0), r_max_);
  // radial barycentric interpolation of each Fourier mode
  int hit = -1;
  double denom = 0.0;
  thread_local std::vector<double> c;
  c.resize(n_r_);
  for (int i = 0; i < n_r_; ++i) {
    const double d = r - r_nodes_[i];
    if (std::abs(d) < 1e-14) {
      hit = i;
      break;
    }
    c[i] = bary_w_[i] / d;
    denom += c[i];
  }
  const int half = n_ang_ / 2;
  // powers of e^{i phi} by recurrence
  thread_local std::vector<cplx> zp;
  zp.resize(half + 1);
  const cplx z(std::cos(phi), std::sin(phi));
  zp[0] = 1.0;
  for (int k = 1; k <= half; ++k) zp[k] = zp[k - 1] * z;
  cplx s = 0.0;
  for (int m = 0; m < n_ang_; ++m) {
    cplx radial;
    if (hit >= 0) {
      radial = modes_(hit, m);
    } else {
      cplx num = 0.0;
      for (int i = 0; i < n_r_; ++i) num += c[i] * modes_(i, m);
      radial = num / denom;
    }
    const int mm = (m <= half) ? m : m - n_ang_;  // signed frequency
    s += radial * (mm >= 0 ? zp[mm] : std::conj(zp[-mm]));
  }
  return s.real();
}

SynthesizedState::SynthesizedState(GroundStateField gs, int sphere_order)
    : gs_(std::move(gs)),
      interp_(gs_.grid, gs_.params, gs_.psi),
      sph_(sphere_rule(2, sphere_order)) {}

SynthesizedState synthesize_ground_state(const GroundStateField& gs,
                                         int sphere_order) {
  return SynthesizedState(gs, sphere_order);
}

double SynthesizedState::psi0(const HPoint& n, const Eigen::Vector2d& p) const {
  const double alpha = std::atan2(p.y(), p.x());
  return interp_(rotate2(n, -alpha));
}

double SynthesizedState::eval_qn(const HPoint& q, const HPoint& n) const {
  // the integrand peaks at p || q with angular width ~ e^{-r_q}; grade the
  // circle panels toward the peak so boosted arguments stay resolved
  const double rq = std::acosh(std::max(1.0, q.time()));
  const double phiq = std::atan2(q.v(2), q.v(1));
  const double rn = std::acosh(std::max(1.0, n.time()));
  const double chin = std::atan2(n.v(2), n.v(1));
  const double delta = std::max(std::min(0.4, 2.0 * std::exp(-rq)), 1e-9);
  std::vector<double> bounds = {kPi};
  while (bounds.back() > delta) bounds.push_back(0.5 * bounds.back());
  auto integrand = [&](double u) {
    const double c = std::cos(u + phiq), sn = std::sin(u + phiq);
    const double base = q.time() - q.v(1) * c - q.v(2) * sn;
    // psi0(n, p(alpha)) = psi~ at (r_n, chi_n - alpha), alpha = u + phiq
    return interp_.eval_polar(rn, chin - (u + phiq)) / std::sqrt(base);
  };
  const Rule1D& base = gauss_legendre_cached(10);
  // central panel plus geometrically graded shells on both sides
  double s = integrate_panel(base, -bounds.back(), bounds.back(), integrand);
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const double hi = bounds[b], lo = bounds[b + 1];
    s += integrate_panel(base, -hi, -lo, integrand);
    s += integrate_panel(base, lo, hi, integrand);
  }
  return s;
}

double SynthesizedState::eval_config(const Config& m) const {
  const OrbitCoords oc = orbit_split(m);
  // phi(m) = (g_s(q1)^{-1}, n); the synthesis argument is q = g q^ = eta q1
  MinkVec qv = oc.q1.v;
  qv.tail(qv.size() - 1) *= -1.0;
  return eval_qn(HPoint{qv}, oc.n[0]);
}

double SynthesizedState::eval_reference(const LorentzElement& g,
                                        const HPoint& n,
                                        const KFunction& v) const {
  // Omega_v(g,n) = int dphi psi~(R(phi) n) [pi_00(g) v](phi); for v = v0
  // this reproduces eval_qn(g q^, n).
  const int nphi = 4 * (2 * v.L + 2);
  double s = 0.0;
  for (int i = 0; i < nphi; ++i) {
    const double phi = 2.0 * kPi * i / nphi;
    const IwasawaCoords iw = iwasawa_decompose(rotation_so12(phi) * g);
    const double phi_out = std::atan2(iw.k(1, 0), iw.k(0, 0));
    const cplx pv = std::exp(0.5 * iw.theta) * v.eval_angle(phi_out);
    s += (2.0 * kPi / nphi) * interp_(rotate2(n, phi)) * pv.real();
  }
  return s;
}

EigenstateReport verify_eigenstate(const KernelSpec& spec,
                                   const SynthesizedState& state,
                                   const std::vector<Config>& samples,
                                   double r_max, int radial, int angular) {
  if (spec.N != 2 || spec.nu != 2)
    throw std::invalid_argument("verify_eigenstate: N=2, nu=2");
  HyperboloidRule hr = hyperboloid_quadrature(2, r_max, radial, angular, "r");
  const int R = radial, A = angular;
  // Omega(q_a, q_b) and the intra-slice factor depend on the pair only
  // through (r_a, r_b, phi_b - phi_a); tabulate on that quotient
  std::vector<double> om_red(static_cast<std::size_t>(R) * R * A);
  std::vector<double> w_red(om_red.size(), 1.0);
  for (int ra = 0; ra < R; ++ra)
    for (int rb = 0; rb < R; ++rb)
      for (int d = 0; d < A; ++d) {
        const HPoint& qa = hr.q[static_cast<std::size_t>(ra) * A];
        const HPoint& qb = hr.q[static_cast<std::size_t>(rb) * A + d];
        const std::size_t idx =
            (static_cast<std::size_t>(ra) * R + rb) * A + d;
        om_red[idx] = state.eval_config(Config{{qa, qb}});
        if (spec.w)
          w_red[idx] = std::sqrt((*spec.w)(mink_dot(qa.v, qb.v)));
      }
  EigenstateReport rep;
  const double lam = state.ground_state().lambda0;
  const std::size_t G = hr.size();
  std::vector<double> h1(G), h2(G);
  for (const auto& m : samples) {
    for (std::size_t a = 0; a < G; ++a) {
      h1[a] = hr.w[a] * spec.h(mink_dot(m.sites[0].v, hr.q[a].v));
      h2[a] = hr.w[a] * spec.h(mink_dot(m.sites[1].v, hr.q[a].v));
    }
    double t_om = 0.0;
    for (int ra = 0; ra < R; ++ra)
      for (int ja = 0; ja < A; ++ja) {
        const double ha = h1[static_cast<std::size_t>(ra) * A + ja];
        double inner = 0.0;
        for (int rb = 0; rb < R; ++rb) {
          const std::size_t row = (static_cast<std::size_t>(ra) * R + rb) * A;
          const std::size_t boff = static_cast<std::size_t>(rb) * A;
          for (int jb = 0; jb < A; ++jb) {
            const int d = jb - ja < 0 ? jb - ja + A : jb - ja;
            inner += h2[boff + jb] * w_red[row + d] * om_red[row + d];
          }
        }
        t_om += ha * inner;
      }
    t_om *= half_intra_factor(spec, m);
    const double omega_m = state.eval_config(m);
    const double rel = std::abs(t_om - lam * omega_m) / (lam * omega_m);
    rep.residuals.push_back(rel);
    rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
  }
  return rep;
}

EquivarianceReport equivariance_check(const SynthesizedState& state,
                                      const std::vector<LorentzElement>& gs,
                                      const std::vector<Config>& samples,
                                      int L) {
  // Omega_{v0}(d(g0^{-1}) m) = Omega_{pi(g0) v0}(phi(m)): the orbit map
  // sends d(g0) to the right action by g0^{-1}.
  EquivarianceReport rep;
  const KFunction v0 = KFunction::constant(2, L);
  for (const auto& g0 : gs) {
    double alias = 0.0;
    const KFunction w = principal_action(0.0, g0, v0, 4, &alias);
    rep.aliasing = std::max(rep.aliasing, alias);
    for (const auto& m : samples) {
      const double lhs = state.eval_config(diagonal_act(g0.inverse(), m));
      const OrbitCoords oc = orbit_split(m);
      const LorentzElement g = boost_section(oc.q1).inverse();
      const double rhs = state.eval_reference(g, oc.n[0], w);
      const double dev = std::abs(lhs - rhs) / std::abs(lhs);
      rep.deviations.push_back(dev);
      rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
    }
  }
  return rep;
}

}  // namespace hgs
