#include "hgs/transfer.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hgs/special.hpp"

namespace hgs {

double LinkFactor::operator()(double c) const {
  return std::exp(-beta * c + shift());
}

double LinkFactor::shift() const {
  return family == FactorFamily::gauss_cosh ? beta : 0.0;
}

FactorFamily family_from_string(const std::string& s) {
  if (s == "gauss_cosh") return FactorFamily::gauss_cosh;
  if (s == "exp_cosh") return FactorFamily::exp_cosh;
  throw std::invalid_argument("unknown factor family: " + s);
}

std::string family_to_string(FactorFamily f) {
  return f == FactorFamily::gauss_cosh ? "gauss_cosh" : "exp_cosh";
}

namespace {

nlohmann::json factor_to_json(const LinkFactor& f) {
  return {{"family", family_to_string(f.family)}, {"beta", f.beta}};
}

LinkFactor factor_from_json(const nlohmann::json& j) {
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "family" && k != "beta")
      throw std::invalid_argument("KernelSpec factor: unknown key " + k);
  }
  LinkFactor f;
  f.family = family_from_string(j.at("family").get<std::string>());
  f.beta = j.at("beta").get<double>();
  if (!(f.beta > 0.0))
    throw std::invalid_argument("KernelSpec: beta must be > 0");
  return f;
}

}  // namespace

nlohmann::json KernelSpec::to_json() const {
  nlohmann::json j;
  j["N"] = N;
  j["nu"] = nu;
  j["h"] = factor_to_json(h);
  if (w) j["w"] = factor_to_json(*w);
  j["adjacency"] = nlohmann::json::array();
  for (auto& [a, b] : adjacency) j["adjacency"].push_back({a, b});
  return j;
}

KernelSpec KernelSpec::from_json(const nlohmann::json& j) {
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "N" && k != "nu" && k != "h" && k != "w" && k != "adjacency")
      throw std::invalid_argument("KernelSpec: unknown key " + k);
  }
  KernelSpec s;
  s.N = j.at("N").get<int>();
  s.nu = j.at("nu").get<int>();
  if (s.N < 2 || s.nu < 2)
    throw std::invalid_argument("KernelSpec: need N >= 2, nu >= 2");
  s.h = factor_from_json(j.at("h"));
  s.w.reset();
  if (j.contains("w") && !j["w"].is_null()) s.w = factor_from_json(j["w"]);
  s.adjacency.clear();
  if (j.contains("adjacency")) {
    for (const auto& pr : j["adjacency"]) {
      const int a = pr.at(0).get<int>(), b = pr.at(1).get<int>();
      if (a < 0 || b < 0 || a >= s.nu || b >= s.nu || a == b)
        throw std::invalid_argument("KernelSpec: bad adjacency pair");
      s.adjacency.emplace_back(a, b);
    }
  }
  return s;
}

double half_intra_factor(const KernelSpec& spec, const Config& m) {
  if (!spec.w || spec.adjacency.empty()) return 1.0;
  double s = 1.0;
  for (auto& [i, j] : spec.adjacency)
    s *= std::sqrt((*spec.w)(mink_dot(m.sites[i].v, m.sites[j].v)));
  return s;
}

double kernel_eval(const KernelSpec& spec, const Config& m, const Config& mp) {
  if (m.nu() != spec.nu || mp.nu() != spec.nu || m.N() != spec.N ||
      mp.N() != spec.N)
    throw std::invalid_argument("kernel_eval: shape mismatch");
  double v = 1.0;
  for (int i = 0; i < spec.nu; ++i)
    v *= spec.h(mink_dot(m.sites[i].v, mp.sites[i].v));
  // grouped so that swapping (m, m') is bit-exact
  const double ww = half_intra_factor(spec, m) * half_intra_factor(spec, mp);
  return v * ww;
}

double ReducedKernel::eval(const LorentzElement& g,
                           const std::vector<HPoint>& n,
                           const std::vector<HPoint>& np) const {
  const LorentzElement gi = g.inverse();
  Config m;
  m.sites.push_back(gi.act(hpoint_origin(spec.N)));
  for (const auto& x : n) m.sites.push_back(gi.act(x));
  Config mp;
  mp.sites.push_back(hpoint_origin(spec.N));
  for (const auto& x : np) mp.sites.push_back(x);
  return kernel_eval(spec, m, mp);
}

RowIntegrabilityReport check_row_integrability(const KernelSpec& spec,
                                               double r_max, int radial,
                                               int angular,
                                               double tail_budget) {
  if (spec.nu != 2)
    throw std::invalid_argument("check_row_integrability: nu=2 implementation");
  auto row_integral = [&](double rho, double rmax, int rad, int ang) {
    // m = (q^, n(rho)); integrate over m' = (q1', q2')
    HyperboloidRule rule = hyperboloid_quadrature(spec.N, rmax, rad, ang, "r");
    Config m;
    m.sites.push_back(hpoint_origin(spec.N));
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(spec.N);
    dir(0) = 1.0;
    m.sites.push_back(hpoint_polar(rho, dir));
    const double wm = half_intra_factor(spec, m);
    double s = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a) {
      const double h1 = spec.h(mink_dot(m.sites[0].v, rule.q[a].v));
      for (std::size_t b = 0; b < rule.size(); ++b) {
        Config mp;
        mp.sites.push_back(rule.q[a]);
        mp.sites.push_back(rule.q[b]);
        s += rule.w[a] * rule.w[b] * h1 *
             spec.h(mink_dot(m.sites[1].v, rule.q[b].v)) *
             half_intra_factor(spec, mp);
      }
    }
    return wm * s;
  };
  RowIntegrabilityReport rep;
  for (int i = 0; i <= 12; ++i) {
    const double rho = r_max * i / 12.0;
    const double v = row_integral(rho, r_max, radial, angular);
    if (v > rep.bound) {
      rep.bound = v;
      rep.argmax_rho = rho;
    }
  }
  const double enlarged =
      row_integral(rep.argmax_rho, r_max + 2.0, radial + 16, angular);
  rep.tail_estimate = std::abs(enlarged - row_integral(rep.argmax_rho, r_max,
                                                       radial, angular));
  if (rep.tail_estimate > tail_budget * rep.bound)
    throw std::runtime_error(
        "check_row_integrability: tail budget violated, enlarge truncation");
  return rep;
}

ConditionCReport check_condition_C(const KernelSpec& spec, double theta_max,
                                   double t_max, double r_max) {
  if (spec.nu != 2 || spec.N != 2)
    throw std::invalid_argument("check_condition_C: N=2, nu=2 implementation");
  ReducedKernel rk{spec};
  auto estimate = [&](double thm, double tm, double rm, int nth, int nt,
                      int nr, int na) {
    Rule1D gth = gauss_legendre(nth, -thm, thm);
    Rule1D gt = gauss_legendre(nt, -tm, tm);
    HyperboloidRule hn = hyperboloid_quadrature(2, rm, nr, na, "r");
    double total = 0.0;
    for (std::size_t a = 0; a < gth.size(); ++a) {
      const double jac = std::exp(-gth.x[a] * (spec.N - 1));
      for (std::size_t b = 0; b < gt.size(); ++b) {
        const LorentzElement na_el =
            nilpotent_n(Eigen::VectorXd::Constant(1, gt.x[b])) *
            boost_a(2, gth.x[a]);
        double inner = 0.0;
        for (std::size_t i = 0; i < hn.size(); ++i)
          for (std::size_t j = 0; j < hn.size(); ++j) {
            const double t = rk.eval(na_el, {hn.q[i]}, {hn.q[j]});
            inner += hn.w[i] * hn.w[j] * t * t;
          }
        total += gth.w[a] * jac * gt.w[b] * inner;
      }
    }
    return total;
  };
  ConditionCReport rep;
  rep.at_truncation.push_back(
      estimate(theta_max - 2.0, t_max - 2.0, r_max - 1.0, 20, 20, 12, 10));
  rep.at_truncation.push_back(
      estimate(theta_max - 1.0, t_max - 1.0, r_max - 0.5, 24, 24, 14, 10));
  rep.at_truncation.push_back(
      estimate(theta_max, t_max, r_max, 28, 28, 16, 10));
  rep.value = rep.at_truncation.back();
  const double inc1 = std::abs(rep.at_truncation[1] - rep.at_truncation[0]);
  const double inc2 = std::abs(rep.at_truncation[2] - rep.at_truncation[1]);
  rep.converged = inc2 <= inc1 + 1e-12 * rep.value;
  return rep;
}

std::size_t ConfigGrid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < nu; ++i) s *= site.size();
  return s;
}

Config ConfigGrid::config(std::size_t idx) const {
  Config m;
  m.sites.resize(nu, hpoint_origin(site.N));
  for (int i = nu - 1; i >= 0; --i) {
    m.sites[i] = site.q[idx % site.size()];
    idx /= site.size();
  }
  return m;
}

double ConfigGrid::weight(std::size_t idx) const {
  double w = 1.0;
  for (int i = 0; i < nu; ++i) {
    w *= site.w[idx % site.size()];
    idx /= site.size();
  }
  return w;
}

double apply_operator(const KernelSpec& spec, const std::vector<double>& psi,
                      const ConfigGrid& grid, const Config& m) {
  if (psi.size() != grid.size())
    throw std::invalid_argument("apply_operator: sample count mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    s += grid.weight(j) * kernel_eval(spec, m, grid.config(j)) * psi[j];
  return s;
}

Eigen::MatrixXd assemble_config_matrix(const KernelSpec& spec,
                                       const ConfigGrid& grid) {
  const std::size_t n = grid.size();
  Eigen::MatrixXd B(n, n);
  std::vector<double> sw(n);
  std::vector<Config> cfg(n);
  for (std::size_t i = 0; i < n; ++i) {
    sw[i] = std::sqrt(grid.weight(i));
    cfg[i] = grid.config(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    B(i, i) = grid.weight(i) * kernel_eval(spec, cfg[i], cfg[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = sw[i] * sw[j] * kernel_eval(spec, cfg[i], cfg[j]);
      B(i, j) = v;
      B(j, i) = v;
    }
  }
  return B;
}

void NormEstimate::write_csv(std::ostream& os) const {
  os << "iter,rayleigh,residual\n";
  for (const auto& r : trace)
    os << r.iter << ',' << r.rayleigh << ',' << r.residual << '\n';
}

NormEstimate power_iteration(const Eigen::MatrixXd& B, int iters, double tol,
                             unsigned seed) {
  NormEstimate est;
  est.method = "power_iteration";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Eigen::VectorXd v(B.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uni(rng);
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd w = B * v;
    lam = v.dot(w);
    const double resid = (w - lam * v).norm();
    est.trace.push_back({it, lam, resid});
    const double wn = w.norm();
    if (wn == 0.0) break;
    v = w / wn;
    if (resid < tol * std::abs(lam)) break;
  }
  est.lambda = lam;
  if (!est.trace.empty()) est.lambda = est.trace.back().rayleigh;
  return est;
}

NormEstimate power_iteration_norm(const KernelSpec& spec,
                                  const ConfigGrid& grid, int iters) {
  return power_iteration(assemble_config_matrix(spec, grid), iters);
}

namespace {

// Node of the K-reduced global grid (N=2, nu=2): q1 at angle 0 and radius r1,
// relative point n at (rho, chi); Q2 = g_s(q1) n stored in polar form.
struct ReducedNode {
  double w = 0.0;    // measure weight (no 2pi; the angle lives in the kernel)
  double r1 = 0.0;   // radius of q1 (angle 0 by the K-reduction)
  double rho2 = 0.0; // radius of Q2
  double ang2 = 0.0; // angle of Q2
  double n0 = 0.0;   // q^ . n, argument of the intra-slice factor
};

// int_0^{2pi} dphi h(c1(phi)) h(c2(phi)) with
//   c1(phi) = cosh(r1-r1') + sinh r1 sinh r1' (1 - cos phi),
//   c2(phi) = cosh(rho-rho') + sinh rho sinh rho' (1 - cos(phi - g2)).
// The hyperbolic-law split keeps every exponent O(1): with
// M1 = beta sh sh, M2 = beta sh sh, R = |M1 e(0) + M2 e(g2)|, the closed
// Bessel form reads 2pi I0(R) e^{R - M1 - M2} e^{-beta(ch+ch-2)}, and
// M1 + M2 - R = 2 M1 M2 (1-cos g2)/(M1+M2+R) avoids cancellation at large
// radius where M ~ e^{2 r1}.
double angle_integral(const LinkFactor& h, const ReducedNode& x,
                      const ReducedNode& y) {
  const double beta = h.beta;
  const double m1 = beta * std::sinh(x.r1) * std::sinh(y.r1);
  const double m2 = beta * std::sinh(x.rho2) * std::sinh(y.rho2);
  const double g2 = x.ang2 - y.ang2;
  const double r2 =
      m1 * m1 + m2 * m2 + 2.0 * m1 * m2 * std::cos(g2);
  const double R = std::sqrt(std::max(0.0, r2));
  const double msum = m1 + m2;
  const double gap =
      msum + R > 0.0 ? 2.0 * m1 * m2 * (1.0 - std::cos(g2)) / (msum + R)
                     : 0.0;  // = M1 + M2 - R
  const double expo = -gap -
                      beta * (std::cosh(x.r1 - y.r1) +
                              std::cosh(x.rho2 - y.rho2) - 2.0) +
                      2.0 * (h.shift() - beta);
  return 2.0 * std::numbers::pi * std::exp(expo) * i0_scaled(R);
}

}  // namespace

NormEstimate global_norm_estimate(const KernelSpec& spec, double r1_max,
                                  int n_r1, double rho_max, int n_rho,
                                  int n_chi, int iters, bool square) {
  if (spec.N != 2 || spec.nu != 2)
    throw std::invalid_argument("global_norm_estimate: N=2, nu=2");
  Rule1D g1 = gauss_legendre(n_r1, 0.0, r1_max);
  Rule1D g2 = gauss_legendre(n_rho, 0.0, rho_max);
  Rule1D gc = uniform_circle(n_chi);
  std::vector<ReducedNode> nodes;
  nodes.reserve(g1.size() * g2.size() * gc.size());
  for (std::size_t a = 0; a < g1.size(); ++a) {
    const double r1 = g1.x[a];
    Eigen::VectorXd dir(2);
    dir << 1.0, 0.0;
    const HPoint q1 = hpoint_polar(r1, dir);
    const LorentzElement gs = boost_section(q1);
    for (std::size_t b = 0; b < g2.size(); ++b)
      for (std::size_t c = 0; c < gc.size(); ++c) {
        Eigen::VectorXd nd(2);
        nd << std::cos(gc.x[c]), std::sin(gc.x[c]);
        const HPoint n = hpoint_polar(g2.x[b], nd);
        const HPoint Q2 = gs.act(n);
        ReducedNode x;
        x.w = g1.w[a] * std::sinh(r1) * g2.w[b] * std::sinh(g2.x[b]) * gc.w[c];
        x.r1 = r1;
        x.rho2 = std::acosh(std::max(1.0, Q2.time()));
        x.ang2 = std::atan2(Q2.v(2), Q2.v(1));
        x.n0 = n.time();
        nodes.push_back(x);
      }
  }
  const std::size_t n = nodes.size();
  Eigen::MatrixXd B(n, n);
  LinkFactor wf = spec.w.value_or(LinkFactor{FactorFamily::gauss_cosh, 0.0});
  const bool has_w = spec.w.has_value();
  std::vector<double> half_w(n, 1.0);
  if (has_w)
    for (std::size_t i = 0; i < n; ++i)
      half_w[i] = std::sqrt(wf(nodes[i].n0));
  for (std::size_t i = 0; i < n; ++i) {
    const double swi = std::sqrt(nodes[i].w) * half_w[i];
    for (std::size_t j = i; j < n; ++j) {
      const double v = swi * std::sqrt(nodes[j].w) * half_w[j] *
                       angle_integral(spec.h, nodes[i], nodes[j]);
      B(i, j) = v;
      B(j, i) = v;
    }
  }
  if (square) {
    NormEstimate est = power_iteration((B * B).eval(), iters);
    est.lambda = std::sqrt(std::max(0.0, est.lambda));
    return est;
  }
  return power_iteration(B, iters);
}

double global_norm_reduced(const KernelSpec& spec, double r1_max, int n_r1,
                           double rho_max, int n_rho, int n_chi, int iters) {
  return global_norm_estimate(spec, r1_max, n_r1, rho_max, n_rho, n_chi,
                              iters)
      .lambda;
}

OrbitProbe renormalized_orbit(const KernelSpec& spec, const ConfigGrid& grid,
                              const std::vector<double>& seed,
                              const std::vector<int>& t_schedule,
                              double patch_radius) {
  const std::size_t n = grid.size();
  if (seed.size() != n)
    throw std::invalid_argument("renormalized_orbit: seed size mismatch");
  for (double v : seed)
    if (!(v > 0.0))
      throw std::invalid_argument("renormalized_orbit: seed must be > 0");
  Eigen::MatrixXd B(n, n);
  std::vector<double> W(n), cfg_r(n);
  std::vector<Config> cfg(n);
  for (std::size_t i = 0; i < n; ++i) {
    W[i] = grid.weight(i);
    cfg[i] = grid.config(i);
    double rmax = 0.0;
    for (const auto& q : cfg[i].sites)
      rmax = std::max(rmax, std::acosh(std::max(1.0, q.time())));
    cfg_r[i] = rmax;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      B(i, j) = kernel_eval(spec, cfg[i], cfg[j]) * W[j];

  OrbitProbe probe;
  Eigen::VectorXd v0 = Eigen::Map<const Eigen::VectorXd>(seed.data(), n);
  Eigen::VectorXd cur = v0;
  double scale = 1.0;  // cur stores T^t v / scale
  auto inner = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += W[i] * a(i) * b(i);
    return s;
  };
  Eigen::VectorXd prev_patch;
  int t = 0;
  const int t_max = t_schedule.empty() ? 0 : t_schedule.back();
  std::size_t next = 0;
  double prev_inner = inner(v0, cur) * scale;
  for (; t <= t_max; ++t) {
    if (next < t_schedule.size() && t == t_schedule[next]) {
      const double ip = inner(v0, cur);  // (v, T^t v)/scale
      Eigen::VectorXd omega = cur / ip;
      probe.t_values.push_back(t);
      probe.omega_t.push_back(omega);
      double sup = 0.0;
      if (prev_patch.size() == omega.size()) {
        for (std::size_t i = 0; i < n; ++i)
          if (cfg_r[i] <= patch_radius)
            sup = std::max(sup, std::abs(omega(i) - prev_patch(i)));
        probe.patch_sup_diff.push_back(sup);
      }
      prev_patch = omega;
      ++next;
    }
    if (t == t_max) break;
    cur = B * cur;
    const double ip = inner(v0, cur);
    probe.lambda_ratio.push_back(ip * scale / prev_inner / scale);
    prev_inner = ip;
    // rescale to dodge under/overflow; Omega_t is scale invariant
    const double m = cur.cwiseAbs().maxCoeff();
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
      cur /= m;
      prev_inner /= m;
      scale *= m;
      probe.rescaled = true;
    }
  }
  return probe;
}

}  // namespace hgs
