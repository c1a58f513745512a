#include "hgs/flat.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hgs/gauss.hpp"

namespace hgs {

namespace {
constexpr double kPi = std::numbers::pi;
}

nlohmann::json FlatKernelSpec::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["nu"] = nu;
  j["beta_h"] = beta_h;
  if (beta_w) j["beta_w"] = *beta_w;
  j["adjacency"] = nlohmann::json::array();
  for (auto& [a, b] : adjacency) j["adjacency"].push_back({a, b});
  return j;
}

FlatKernelSpec FlatKernelSpec::from_json(const nlohmann::json& j) {
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "N" && k != "nu" && k != "beta_h" && k != "beta_w" &&
        k != "adjacency")
      throw std::invalid_argument("FlatKernelSpec: unknown key " + k);
  }
  FlatKernelSpec s;
  s.N = j.value("N", 2);
  s.nu = j.value("nu", 2);
  s.beta_h = j.at("beta_h").get<double>();
  if (!(s.beta_h > 0.0))
    throw std::invalid_argument("FlatKernelSpec: beta_h > 0");
  s.beta_w.reset();
  if (j.contains("beta_w") && !j["beta_w"].is_null()) {
    s.beta_w = j["beta_w"].get<double>();
    if (!(*s.beta_w > 0.0))
      throw std::invalid_argument("FlatKernelSpec: beta_w > 0");
  }
  s.adjacency.clear();
  if (j.contains("adjacency"))
    for (const auto& pr : j["adjacency"])
      s.adjacency.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
  return s;
}

namespace {

double half_intra(const FlatKernelSpec& spec,
                  const std::vector<Eigen::Vector2d>& x) {
  if (!spec.beta_w || spec.adjacency.empty()) return 1.0;
  double s = 0.0;
  for (auto& [i, j] : spec.adjacency)
    s += (x[i] - x[j]).squaredNorm();
  return std::exp(-0.5 * (*spec.beta_w) * s);
}

}  // namespace

double flat_kernel_eval(const FlatKernelSpec& spec,
                        const std::vector<Eigen::Vector2d>& x,
                        const std::vector<Eigen::Vector2d>& y) {
  if (static_cast<int>(x.size()) != spec.nu ||
      static_cast<int>(y.size()) != spec.nu)
    throw std::invalid_argument("flat_kernel_eval: shape mismatch");
  double e = 0.0;
  for (int i = 0; i < spec.nu; ++i) e += (x[i] - y[i]).squaredNorm();
  // grouped so that swapping (x, y) is bit-exact
  const double ww = half_intra(spec, x) * half_intra(spec, y);
  return std::exp(-spec.beta_h * e) * ww;
}

cplx flat_fiber_closed_form(const FlatKernelSpec& spec, double omega,
                            const Eigen::Vector2d& u,
                            const Eigen::Vector2d& up) {
  const double b = spec.beta_h;
  const Eigen::Vector2d d = up - u;
  double wfac = 1.0;
  if (spec.beta_w)
    wfac = std::exp(-0.5 * (*spec.beta_w) *
                    (u.squaredNorm() + up.squaredNorm()));
  return (kPi / (2.0 * b)) * std::exp(-omega * omega / (8.0 * b)) *
         std::exp(-0.5 * b * d.squaredNorm()) *
         std::exp(cplx(0.0, -0.5 * omega * d.x())) * wfac;
}

cplx flat_fiber_quadrature(const FlatKernelSpec& spec, double omega,
                           const Eigen::Vector2d& u,
                           const Eigen::Vector2d& up, double a_max,
                           int a_order) {
  // int da e^{i w e1.a} T((e,-a)...(q^,n) pullback:
  // T((0,u'), (-a, u - a))-form reduces to e^{-b|a|^2} e^{-b|u'-a-u|^2}
  const double b = spec.beta_h;
  double wfac = 1.0;
  if (spec.beta_w)
    wfac = std::exp(-0.5 * (*spec.beta_w) *
                    (u.squaredNorm() + up.squaredNorm()));
  Rule1D g = gauss_legendre(a_order, -a_max, a_max);
  cplx acc = 0.0;
  const Eigen::Vector2d d = up - u;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Eigen::Vector2d a(g.x[i], g.x[j]);
      acc += g.w[i] * g.w[j] * std::exp(-b * a.squaredNorm()) *
             std::exp(-b * (d - a).squaredNorm()) *
             std::exp(cplx(0.0, -omega * a.x()));
    }
  return acc * wfac;
}

FlatFiberKernel flat_fiber_kernel(const FlatKernelSpec& spec, double omega,
                                  const FlatGridParams& params) {
  if (spec.N != 2 || spec.nu != 2)
    throw std::invalid_argument("flat_fiber_kernel: N=2, nu=2");
  if (!spec.beta_w)
    throw std::invalid_argument(
        "flat_fiber_kernel: intra-slice factor required for compact fibers");
  FlatFiberKernel f;
  f.omega = omega;
  f.spec = spec;
  f.params = params;
  Rule1D gr = gauss_legendre(params.radial, 0.0, params.rho_max);
  Rule1D ga = uniform_circle(params.angular);
  for (std::size_t i = 0; i < gr.size(); ++i)
    for (std::size_t j = 0; j < ga.size(); ++j) {
      f.nodes.emplace_back(gr.x[i] * std::cos(ga.x[j]),
                           gr.x[i] * std::sin(ga.x[j]));
      f.weights.push_back(gr.w[i] * gr.x[i] * ga.w[j]);
    }
  const std::size_t n = f.nodes.size();
  Eigen::MatrixXcd B(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      B(i, j) = std::sqrt(f.weights[i] * f.weights[j]) *
                flat_fiber_closed_form(spec, omega, f.nodes[i], f.nodes[j]);
  f.asymmetry = (B - B.adjoint()).cwiseAbs().maxCoeff();
  f.mat = 0.5 * (B + B.adjoint().eval());
  return f;
}

namespace {

std::pair<double, Eigen::VectorXcd> top_mag(const Eigen::MatrixXcd& M,
                                            int iters) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Eigen::VectorXcd v(M.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(uni(rng), 0.0);
  v.normalize();
  double lam2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = M * v;
    Eigen::VectorXcd w2 = M * w;
    lam2 = w.squaredNorm();
    const double n2 = w2.norm();
    if (n2 == 0.0) break;
    Eigen::VectorXcd vn = w2 / n2;
    if ((vn - v).norm() < 1e-14) {
      v = vn;
      break;
    }
    v = vn;
  }
  return {std::sqrt(std::max(0.0, lam2)), v};
}

}  // namespace

double flat_fiber_norm(const FlatFiberKernel& f, int iters) {
  return top_mag(f.mat, iters).first;
}

double flat_norm_oracle_ratio(const FlatKernelSpec& spec, double omega) {
  return std::exp(-omega * omega / (8.0 * spec.beta_h));
}

NormCurve flat_norm_curve(const FlatKernelSpec& spec,
                          const std::vector<double>& omegas,
                          const FlatGridParams& params, bool refine) {
  NormCurve c;
  c.omega = omegas;
  FlatGridParams fine = params;
  fine.radial = static_cast<int>(std::lround(params.radial * 1.5));
  fine.angular = static_cast<int>(std::lround(params.angular * 1.5));
  for (double w : omegas) {
    const double coarse = flat_fiber_norm(flat_fiber_kernel(spec, w, params));
    if (refine) {
      const double fval = flat_fiber_norm(flat_fiber_kernel(spec, w, fine));
      c.norm.push_back(fval);
      c.err.push_back(std::abs(fval - coarse));
    } else {
      c.norm.push_back(coarse);
      c.err.push_back(0.0);
    }
  }
  return c;
}

nlohmann::json FlatGroundState::to_json() const {
  nlohmann::json j;
  j["geometry"] = "flat";
  j["lambda0"] = lambda0;
  j["lambda1"] = lambda1;
  j["gap"] = gap();
  j["rotational_asymmetry"] = rotational_asymmetry;
  j["grid"] = {{"type", "polar"},
               {"rho_max", params.rho_max},
               {"radial", params.radial},
               {"angular", params.angular}};
  j["psi"] = std::vector<double>(psi.data(), psi.data() + psi.size());
  return j;
}

FlatGroundState flat_ground_state(const FlatKernelSpec& spec,
                                  const FlatGridParams& params) {
  FlatFiberKernel f = flat_fiber_kernel(spec, 0.0, params);
  Eigen::MatrixXd M = f.mat.real();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows()).normalized();
  for (int it = 0; it < 600; ++it) {
    Eigen::VectorXd w = M * v;
    w.normalize();
    if ((w - v).norm() < 1e-15) {
      v = w;
      break;
    }
    v = w;
  }
  FlatGroundState gs;
  gs.lambda0 = v.dot(M * v);
  gs.params = params;
  gs.nodes = f.nodes;
  if (v.sum() < 0.0) v = -v;
  Eigen::MatrixXd M1 = M - gs.lambda0 * v * v.transpose();
  gs.lambda1 = top_mag(M1.cast<cplx>(), 800).first;
  if (gs.gap() > 1.0 - 1e-6)
    throw std::runtime_error("flat_ground_state: degenerate top eigenvalue");
  gs.psi.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    gs.psi(i) = v(i) / std::sqrt(f.weights[i]);
    if (!(v(i) > 0.0))
      throw std::runtime_error("flat_ground_state: eigenfunction not positive");
  }
  // rotational invariance: relative spread across the angular ring at each
  // radius
  const int na = params.angular;
  double asym = 0.0;
  for (int i = 0; i < params.radial; ++i) {
    double lo = gs.psi(i * na), hi = gs.psi(i * na);
    for (int j = 1; j < na; ++j) {
      lo = std::min(lo, gs.psi(i * na + j));
      hi = std::max(hi, gs.psi(i * na + j));
    }
    asym = std::max(asym, (hi - lo) / std::max(hi, 1e-300));
  }
  gs.rotational_asymmetry = asym;
  return gs;
}

}  // namespace hgs
