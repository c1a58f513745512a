#include "hgs/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hgs/toml.hpp"

namespace hgs {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> omega_grid_from_json(const nlohmann::json& j) {
  std::vector<double> grid;
  if (j.is_array()) {
    for (const auto& v : j) grid.push_back(v.get<double>());
  } else if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      (void)v;
      if (k != "start" && k != "stop" && k != "step")
        throw std::invalid_argument("omega grid: unknown key " + k);
    }
    const double a = j.at("start").get<double>();
    const double b = j.at("stop").get<double>();
    const double s = j.at("step").get<double>();
    if (!(s > 0.0)) throw std::invalid_argument("omega grid: step > 0");
    for (double w = a; w <= b + 1e-12; w += s) grid.push_back(w);
  } else {
    throw std::invalid_argument("omega grid: expected array or table");
  }
  if (grid.empty()) throw std::invalid_argument("omega grid: empty");
  return grid;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

CheckRow check_leq(const std::string& name, double value, double tol,
                   double wall) {
  return {name, value, tol, value <= tol, wall};
}

CheckRow check_true(const std::string& name, bool ok, double value,
                    double wall) {
  return {name, value, 0.0, ok, wall};
}

std::vector<Config> random_configs(int count, double r_cap, int N,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(0.0, r_cap);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi);
  std::vector<Config> out;
  for (int i = 0; i < count; ++i) {
    Config m;
    for (int s = 0; s < 2; ++s) {
      Eigen::VectorXd dir(N);
      const double a = ua(rng);
      dir << std::cos(a), std::sin(a);
      m.sites.push_back(hpoint_polar(ur(rng), dir));
    }
    out.push_back(m);
  }
  return out;
}

std::vector<LorentzElement> random_group_elements(int count, double rap_cap,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-rap_cap, rap_cap);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * kPi);
  std::vector<LorentzElement> out;
  for (int i = 0; i < count; ++i) {
    const LorentzElement g = rotation_so12(ua(rng)) * boost_a(2, ur(rng)) *
                             rotation_so12(ua(rng));
    out.push_back(g);
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  for (auto& [k, v] : j.items()) {
    (void)v;
    if (k != "geometry" && k != "kernel" && k != "flat_kernel" &&
        k != "omega" && k != "out_dir" && k != "seed" && k != "square" &&
        k != "refine" && k != "grid" && k != "halfline" && k != "global")
      throw std::invalid_argument("config: unknown key " + k);
  }
  c.geometry = j.value("geometry", std::string("hyperbolic"));
  if (c.geometry != "hyperbolic" && c.geometry != "flat" &&
      c.geometry != "halfline")
    throw std::invalid_argument("config: bad geometry " + c.geometry);
  if (j.contains("kernel")) c.kernel = KernelSpec::from_json(j["kernel"]);
  if (j.contains("flat_kernel"))
    c.flat_kernel = FlatKernelSpec::from_json(j["flat_kernel"]);
  if (j.contains("omega")) c.omega_grid = omega_grid_from_json(j["omega"]);
  c.out_dir = j.value("out_dir", std::string("out"));
  c.seed = j.value("seed", std::uint64_t{1});
  c.square = j.value("square", false);
  c.refine = j.value("refine", 1);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    for (auto& [k, v] : g.items()) {
      (void)v;
      if (k != "r_max" && k != "radial" && k != "angular" &&
          k != "theta_max" && k != "theta_order")
        throw std::invalid_argument("config grid: unknown key " + k);
    }
    c.fiber_grid.r_max = g.value("r_max", c.fiber_grid.r_max);
    c.fiber_grid.radial = g.value("radial", c.fiber_grid.radial);
    c.fiber_grid.angular = g.value("angular", c.fiber_grid.angular);
    c.fiber_grid.theta_max = g.value("theta_max", c.fiber_grid.theta_max);
    c.fiber_grid.theta_order = g.value("theta_order", c.fiber_grid.theta_order);
    c.flat_grid.rho_max = g.value("r_max", c.flat_grid.rho_max);
    c.flat_grid.radial = g.value("radial", c.flat_grid.radial);
    c.flat_grid.angular = g.value("angular", c.flat_grid.angular);
  }
  if (j.contains("halfline")) {
    const auto& h = j["halfline"];
    for (auto& [k, v] : h.items()) {
      (void)v;
      if (k != "x_max" && k != "panels")
        throw std::invalid_argument("config halfline: unknown key " + k);
    }
    c.halfline_x_max = h.value("x_max", c.halfline_x_max);
    c.halfline_panels = h.value("panels", c.halfline_panels);
  }
  if (j.contains("global")) {
    const auto& g = j["global"];
    for (auto& [k, v] : g.items()) {
      (void)v;
      if (k != "r1_max" && k != "n_r1" && k != "n_rho" && k != "n_chi")
        throw std::invalid_argument("config global: unknown key " + k);
    }
    c.global_r1_max = g.value("r1_max", c.global_r1_max);
    c.global_n_r1 = g.value("n_r1", c.global_n_r1);
    c.global_n_rho = g.value("n_rho", c.global_n_rho);
    c.global_n_chi = g.value("n_chi", c.global_n_chi);
  }
  if (c.refine > 1) {
    for (int i = 1; i < c.refine; ++i)
      c.fiber_grid = c.fiber_grid.refined(1.5);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_json(config_load_file(path));
}

bool RunReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["preset"] = preset;
  j["geometry"] = geometry;
  j["pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"wall_s", c.wall_s}});
  j["diagnostics"] = diagnostics;
  return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport r;
  r.preset = j.at("preset").get<std::string>();
  r.geometry = j.at("geometry").get<std::string>();
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(),
                        c.at("value").get<double>(),
                        c.at("tolerance").get<double>(),
                        c.at("pass").get<bool>(), c.value("wall_s", 0.0)});
  if (j.contains("diagnostics")) r.diagnostics = j["diagnostics"];
  return r;
}

void RunReport::print(std::ostream& os, bool quiet) const {
  if (!quiet) os << "== " << preset << " (" << geometry << ") ==\n";
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-44s %12.5g  tol %-10.3g %s  (%.2fs)",
                  c.name.c_str(), c.value, c.tolerance,
                  c.pass ? "PASS" : "FAIL", c.wall_s);
    os << buf << '\n';
  }
  os << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << '\n';
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
  }
  fs::rename(tmp, path);
}

void write_json_atomic(const std::string& path, const nlohmann::json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

nlohmann::json report_fingerprint(const RunReport& rep) {
  nlohmann::json j = rep.to_json();
  for (auto& c : j["checks"]) c["wall_s"] = 0.0;
  return j;
}

RunReport run_oracle(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.preset = "oracle";
  rep.geometry = "halfline";
  HalflineOperator op(cfg.halfline_x_max, cfg.halfline_panels);

  for (double w : {0.25, 1.0, 4.0}) {
    Timer t;
    const double lam = halfline_eigenvalue(w);
    const double b = halfline_phase(w);
    double worst = 0.0;
    for (double x = 0.0; x <= cfg.halfline_x_max - 5.0; x += 0.7) {
      const double tv = op.apply_with_sinusoid_tail(
          [&](double y) { return halfline_eigenfunction(w, y); }, x, 1.0, w,
          b);
      worst = std::max(worst, std::abs(tv - lam * halfline_eigenfunction(w, x)));
    }
    std::ostringstream nm;
    nm << "halfline.eigen_residual.omega=" << w;
    rep.checks.push_back(check_leq(nm.str(), worst, 1e-8, t.s()));
  }
  {
    // (T psi)'' = T psi - 2 psi on a smooth compactly supported psi
    Timer t;
    auto psi = [](double y) {
      const double z = (y - 8.0) / 3.0;
      return std::exp(-z * z);
    };
    auto tpsi = [&](double x) { return op.apply(psi, x); };
    double worst = 0.0;
    const double h = 1e-3;
    for (double x = 2.0; x <= 20.0; x += 1.7) {
      const double dd = (tpsi(x + h) - 2.0 * tpsi(x) + tpsi(x - h)) / (h * h);
      worst = std::max(worst, std::abs(dd - (tpsi(x) - 2.0 * psi(x))));
    }
    rep.checks.push_back(
        check_leq("halfline.second_derivative_identity", worst, 1e-5, t.s()));
  }
  {
    Timer t;
    std::mt19937_64 rng(cfg.seed + 17);
    std::uniform_real_distribution<double> ux(0.0, 15.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng), y = ux(rng);
      auto ky = [&](double z) { return std::exp(-std::abs(z - y)); };
      const double direct = op.apply(ky, x, {y});
      worst = std::max(worst, std::abs(direct - halfline_iterated2(x, y)));
    }
    rep.checks.push_back(
        check_leq("halfline.iterated2_closed_form", worst, 1e-10, t.s()));
  }
  {
    Timer t;
    std::mt19937_64 rng(cfg.seed + 18);
    std::uniform_real_distribution<double> ux(0.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double x = ux(rng), y = ux(rng);
      auto t2y = [&](double z) { return halfline_iterated2(z, y); };
      const double direct = op.apply(t2y, x, {y});
      const double res = halfline_iterated_resolution(x, y, 3);
      worst = std::max(worst, std::abs(direct - res));
    }
    rep.checks.push_back(
        check_leq("halfline.iterated3_resolution", worst, 1e-8, t.s()));
  }
  {
    Timer t;
    auto f = [](double x) { return (x + 0.5) * std::exp(-x); };
    const ParsevalPair p = halfline_parseval(op, f, f);
    const double rel = std::abs(p.spectral - p.direct) / std::abs(p.direct);
    rep.checks.push_back(check_leq("halfline.parseval", rel, 1e-6, t.s()));
    rep.diagnostics["parseval"] = {{"spectral", p.spectral},
                                   {"direct", p.direct}};
  }
  {
    // finite-window orthogonality: running mean of I(X) decays
    Timer t;
    const double w1 = 0.8, w2 = 1.7;
    auto I = [&](double X) {
      Rule1D r = composite_gauss(200, 4, 0.0, X);
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i)
        s += r.w[i] * halfline_eigenfunction(w1, r.x[i]) *
             halfline_eigenfunction(w2, r.x[i]);
      return s;
    };
    // the window integral oscillates around zero; compare suprema of
    // |I(X)|/X over early and late windows
    double early = 0.0, late = 0.0;
    for (double X = 6.0; X <= 12.0; X += 0.5)
      early = std::max(early, std::abs(I(X)) / X);
    for (double X = 28.0; X <= 40.0; X += 0.5)
      late = std::max(late, std::abs(I(X)) / X);
    rep.checks.push_back(check_true("halfline.orthogonality_window",
                                    late < early && late < 0.03, late,
                                    t.s()));
  }
  {
    // discretized operator: top eigenvalue increases to 2, window mass drops
    Timer t;
    std::vector<double> lams, masses;
    for (double X : {10.0, 20.0, 40.0}) {
      Rule1D grid = composite_gauss(static_cast<int>(X * 10), 2, 0.0, X);
      const std::size_t n = grid.size();
      Eigen::MatrixXd B(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          B(i, j) = std::sqrt(grid.w[i] * grid.w[j]) *
                    std::exp(-std::abs(grid.x[i] - grid.x[j]));
      NormEstimate est = power_iteration(B, 4000, 1e-14);
      lams.push_back(est.lambda);
      // top eigenvector window mass on [0,5]
      Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
      for (int it = 0; it < 4000; ++it) {
        Eigen::VectorXd w = (B * v).normalized();
        if ((w - v).norm() < 1e-13) {
          v = w;
          break;
        }
        v = w;
      }
      double win = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (grid.x[i] <= 5.0) win += v(i) * v(i);
      masses.push_back(win);
    }
    const bool increasing = lams[0] < lams[1] && lams[1] < lams[2] &&
                            lams[2] < 2.0;
    const bool mass_drop = masses[0] > masses[1] && masses[1] > masses[2];
    rep.checks.push_back(check_true("halfline.no_ground_state.lambda_to_2",
                                    increasing, 2.0 - lams[2], t.s()));
    rep.checks.push_back(check_true("halfline.no_ground_state.window_mass",
                                    mass_drop, masses[2], t.s()));
    rep.diagnostics["halfline_lambda_by_domain"] = lams;
    rep.diagnostics["halfline_window_mass_by_domain"] = masses;
  }
  return rep;
}

RunReport run_fiber_scan(const ExperimentConfig& cfg) {
  if (cfg.omega_grid.empty())
    throw std::invalid_argument("fiber-scan: empty omega grid");
  RunReport rep;
  rep.preset = "fiber-scan";
  rep.geometry = "hyperbolic";
  Timer t;
  const NormCurve c = norm_curve(cfg.kernel, cfg.omega_grid, cfg.fiber_grid,
                                 true, 2);
  const double wall = t.s();
  std::ostringstream csv;
  c.write_csv(csv);
  write_text_atomic(cfg.out_dir + "/norm_curve.csv", csv.str());

  rep.checks.push_back(
      check_true("fiber.argmax_at_omega0", c.argmax() == 0, c.omega[c.argmax()],
                 wall));
  double min_drop = 1e300;
  for (std::size_t i = 1; i < c.norm.size(); ++i)
    min_drop = std::min(min_drop, c.norm[i - 1] - c.norm[i]);
  rep.checks.push_back(
      check_true("fiber.strictly_decreasing", min_drop > 0.0, min_drop, wall));
  double max_tail = 0.0, max_err = 0.0;
  for (std::size_t i = 1; i < c.norm.size(); ++i)
    max_tail = std::max(max_tail, c.norm[i]);
  for (double e : c.err) max_err = std::max(max_err, e);
  const double margin = c.norm[0] - max_tail;
  rep.checks.push_back(check_true("fiber.margin_vs_10x_refinement",
                                  margin >= 10.0 * max_err,
                                  margin / std::max(10.0 * max_err, 1e-300),
                                  wall));
  rep.diagnostics["norm_curve"] = {{"margin", margin},
                                   {"max_refine_err", max_err},
                                   {"norm0", c.norm[0]},
                                   {"argmax_omega", c.omega[c.argmax()]}};
  return rep;
}

RunReport run_groundstate(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.preset = "groundstate";
  rep.geometry = "hyperbolic";
  Timer t0;
  // the eigenfunction wants more resolution than the eigenvalue
  const FiberGridParams gs_grid = cfg.fiber_grid.refined();
  const GroundStateField gs = ground_state_00(cfg.kernel, gs_grid);
  write_json_atomic(cfg.out_dir + "/groundstate.json", gs.to_json());
  rep.checks.push_back(
      check_true("gs.psi_positive", gs.psi.minCoeff() > 0.0, gs.psi.minCoeff(),
                 t0.s()));
  rep.checks.push_back(
      check_leq("gs.spectral_gap", gs.gap(), 0.95, t0.s()));
  {
    Timer t;
    const double n0 = fiber_norm(fiber_kernel(cfg.kernel, 0.0, gs_grid));
    const double rel = std::abs(n0 - gs.lambda0) / gs.lambda0;
    rep.checks.push_back(
        check_leq("gs.lambda0_vs_norm_at_omega0", rel, 1e-10, t.s()));
  }
  const SynthesizedState state = synthesize_ground_state(gs, 64);
  {
    Timer t;
    std::mt19937_64 rng(cfg.seed + 5);
    std::uniform_real_distribution<double> ur(0.0, 2.5), ua(0.0, 2.0 * kPi);
    double mn = 1e300;
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd d1(2), d2(2);
      const double a1 = ua(rng), a2 = ua(rng);
      d1 << std::cos(a1), std::sin(a1);
      d2 << std::cos(a2), std::sin(a2);
      const double v =
          state.eval_qn(hpoint_polar(ur(rng), d1), hpoint_polar(ur(rng), d2));
      mn = std::min(mn, v);
    }
    rep.checks.push_back(check_true("gs.omega_positive_100_samples", mn > 0.0,
                                    mn, t.s()));
  }
  {
    Timer t;
    Eigen::VectorXd dn(2);
    dn << 1.0, 0.0;
    const HPoint n0 = hpoint_polar(0.7, dn);
    double prev = 1e300;
    bool monotone = true;
    std::vector<double> decay;
    for (double s = 3.0; s <= 6.0; s += 0.5) {
      Eigen::VectorXd dq(2);
      dq << 1.0, 0.0;
      const double v = state.eval_qn(hpoint_polar(s, dq), n0);
      decay.push_back(v);
      if (v >= prev) monotone = false;
      prev = v;
    }
    rep.checks.push_back(check_true("gs.boost_decay_monotone", monotone,
                                    decay.back(), t.s()));
    rep.diagnostics["boost_decay"] = decay;
  }
  {
    // partial-ball L2 mass of Omega over the global coordinate grows
    Timer t;
    Rule1D qr = gauss_legendre(20, 0.0, 4.0);
    Rule1D qa = uniform_circle(8);
    HyperboloidRule nr = hyperboloid_quadrature(2, 3.0, 10, 12, "r");
    std::vector<double> shell(qr.size(), 0.0);
    for (std::size_t i = 0; i < qr.size(); ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < qa.size(); ++a) {
        Eigen::VectorXd dq(2);
        dq << std::cos(qa.x[a]), std::sin(qa.x[a]);
        const HPoint q = hpoint_polar(qr.x[i], dq);
        for (std::size_t b = 0; b < nr.size(); ++b) {
          const double om = state.eval_qn(q, nr.q[b]);
          acc += qa.w[a] * nr.w[b] * om * om;
        }
      }
      shell[i] = qr.w[i] * std::sinh(qr.x[i]) * acc;
    }
    std::vector<double> mass;
    double run = 0.0;
    for (std::size_t i = 0; i < shell.size(); ++i) {
      run += shell[i];
      if (i % 5 == 4) mass.push_back(run);
    }
    const bool grows = mass.size() >= 3 && mass[1] > 1.2 * mass[0] &&
                       mass[2] > 1.2 * mass[1];
    rep.checks.push_back(
        check_true("gs.omega_ball_mass_grows", grows, mass.back(), t.s()));
    rep.diagnostics["omega_ball_mass"] = mass;
  }
  {
    // synthesized-state evaluations for downstream plotting
    std::ostringstream csv;
    csv << "q0,q1,q2,n0,n1,n2,omega\n";
    std::mt19937_64 rng(cfg.seed + 6);
    std::uniform_real_distribution<double> ur(0.0, 2.5), ua(0.0, 2.0 * kPi);
    for (int i = 0; i < 64; ++i) {
      Eigen::VectorXd d1(2), d2(2);
      const double a1 = ua(rng), a2 = ua(rng);
      d1 << std::cos(a1), std::sin(a1);
      d2 << std::cos(a2), std::sin(a2);
      const HPoint q = hpoint_polar(ur(rng), d1);
      const HPoint n = hpoint_polar(ur(rng), d2);
      csv << q.v(0) << ',' << q.v(1) << ',' << q.v(2) << ',' << n.v(0) << ','
          << n.v(1) << ',' << n.v(2) << ',' << state.eval_qn(q, n) << '\n';
    }
    write_text_atomic(cfg.out_dir + "/omega_samples.csv", csv.str());
  }
  rep.diagnostics["lambda0"] = gs.lambda0;
  rep.diagnostics["gap"] = gs.gap();
  rep.diagnostics["ground_state_family"] =
      "infinite equivariant family via pi_00 reference vectors";
  rep.diagnostics["norm_argmax_omega"] = 0.0;
  return rep;
}

RunReport run_verify(const ExperimentConfig& cfg) {
  RunReport rep;
  rep.preset = "verify";
  rep.geometry = "hyperbolic";
  const GroundStateField gs =
      ground_state_00(cfg.kernel, cfg.fiber_grid.refined());
  const SynthesizedState state = synthesize_ground_state(gs, 64);
  {
    Timer t;
    const auto samples = random_configs(20, 2.0, 2, cfg.seed + 31);
    const EigenstateReport er =
        verify_eigenstate(cfg.kernel, state, samples, 6.0, 36, 64);
    rep.checks.push_back(
        check_leq("verify.eigen_residual_20_samples", er.max_rel_residual,
                  1e-2, t.s()));
  }
  {
    Timer t;
    const auto gels = random_group_elements(10, 1.0, cfg.seed + 32);
    const auto samples = random_configs(3, 1.5, 2, cfg.seed + 33);
    const EquivarianceReport eq = equivariance_check(state, gels, samples, 32);
    rep.checks.push_back(check_leq("verify.equivariance_deviation",
                                   eq.max_rel_deviation, 1e-4, t.s()));
    rep.diagnostics["equivariance_aliasing"] = eq.aliasing;
  }
  {
    Timer t;
    std::vector<double> omegas;
    for (double w = 0.0; w <= 4.0 + 1e-12; w += 0.25) omegas.push_back(w);
    const NormCurve c =
        norm_curve(cfg.kernel, omegas, cfg.fiber_grid, false, 2);
    double fmax = 0.0;
    for (double v : c.norm) fmax = std::max(fmax, v);
    const NormEstimate est = global_norm_estimate(
        cfg.kernel, cfg.global_r1_max, cfg.global_n_r1, cfg.fiber_grid.r_max,
        cfg.global_n_rho, cfg.global_n_chi, 300, cfg.square);
    const double global = est.lambda;
    std::ostringstream trace;
    est.write_csv(trace);
    write_text_atomic(cfg.out_dir + "/power_trace.csv", trace.str());
    const double rel = std::abs(global - fmax) / fmax;
    rep.checks.push_back(
        check_leq("verify.global_vs_fiber_norm", rel, 1e-2, t.s()));
    rep.diagnostics["global_norm"] = global;
    rep.diagnostics["fiber_norm_max"] = fmax;
    rep.diagnostics["squared_operator"] = cfg.square;
  }
  return rep;
}

RunReport run_flat(const ExperimentConfig& cfg) {
  if (cfg.omega_grid.empty())
    throw std::invalid_argument("flat: empty omega grid");
  RunReport rep;
  rep.preset = "flat";
  rep.geometry = "flat";
  const FlatKernelSpec& spec = cfg.flat_kernel;
  {
    Timer t;
    std::mt19937_64 rng(cfg.seed + 41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 11; ++i) {
      const Eigen::Vector2d a(u(rng), u(rng)), b(u(rng), u(rng));
      const double w = 0.4 * i;
      const cplx closed = flat_fiber_closed_form(spec, w, a, b);
      const cplx quad = flat_fiber_quadrature(spec, w, a, b, 8.0, 128);
      worst = std::max(worst, std::abs(closed - quad) / std::abs(closed));
    }
    rep.checks.push_back(
        check_leq("flat.kernel_vs_fourier_oracle", worst, 1e-6, t.s()));
  }
  Timer t;
  const NormCurve c = flat_norm_curve(spec, cfg.omega_grid, cfg.flat_grid);
  std::ostringstream csv;
  csv << "# geometry: flat\n";
  c.write_csv(csv);
  write_text_atomic(cfg.out_dir + "/flat_norm_curve.csv", csv.str());
  double min_drop = 1e300;
  for (std::size_t i = 1; i < c.norm.size(); ++i)
    min_drop = std::min(min_drop, c.norm[i - 1] - c.norm[i]);
  rep.checks.push_back(check_true("flat.strictly_decreasing", min_drop > 0.0,
                                  min_drop, t.s()));
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < c.norm.size(); ++i) {
      const double oracle = flat_norm_oracle_ratio(spec, c.omega[i]);
      worst = std::max(worst, std::abs(c.norm[i] / c.norm[0] - oracle));
    }
    rep.checks.push_back(
        check_leq("flat.norm_ratio_vs_oracle", worst, 1e-6, t.s()));
  }
  {
    // log-norm curve is concave quadratic for the Gaussian family
    double worst = 0.0;
    for (std::size_t i = 0; i < c.norm.size(); ++i) {
      const double fit =
          std::log(c.norm[0]) -
          c.omega[i] * c.omega[i] / (8.0 * spec.beta_h);
      worst = std::max(worst, std::abs(std::log(c.norm[i]) - fit));
    }
    rep.checks.push_back(
        check_leq("flat.log_quadratic_fit", worst, 1e-3, t.s()));
  }
  {
    Timer t2;
    const FlatGroundState gs = flat_ground_state(spec, cfg.flat_grid);
    write_json_atomic(cfg.out_dir + "/flat_groundstate.json", gs.to_json());
    rep.checks.push_back(check_leq("flat.spectral_gap", gs.gap(), 0.95,
                                   t2.s()));
    rep.checks.push_back(check_leq("flat.rotational_asymmetry",
                                   gs.rotational_asymmetry, 1e-8, t2.s()));
    rep.diagnostics["lambda0"] = gs.lambda0;
    rep.diagnostics["gap"] = gs.gap();
  }
  rep.diagnostics["ground_state_family"] = "unique ISO(N) singlet";
  rep.diagnostics["norm_argmax_omega"] = c.omega[c.argmax()];
  // the flat ground state is constant along the translation factor: the
  // partial-ball mass over the global coordinate grows with the volume
  rep.diagnostics["global_mass_growth"] = "linear in volume (constant density)";
  return rep;
}

RunReport run_branching(const ExperimentConfig& cfg) {
  (void)cfg;
  RunReport rep;
  rep.preset = "branching";
  rep.geometry = "hyperbolic";
  {
    Timer t;
    int bad = 0;
    for (int N : {3, 4, 5}) {
      Weight xi0;
      xi0.twice.assign(so_rank(N - 1), 0);
      const auto content =
          k_content(SeriesLabel::principal(N, xi0), 20);
      // expected: (0,...,0,l), 0 <= l <= 20
      std::size_t expect = 21;
      if (content.size() != expect) ++bad;
      for (const auto& w : content) {
        for (std::size_t i = 0; i + 1 < w.twice.size(); ++i)
          if (w.twice[i] != 0) ++bad;
        if (w.twice.back() < 0 || w.twice.back() > 40) ++bad;
      }
    }
    rep.checks.push_back(
        check_true("branching.spherical_content_exact", bad == 0, bad, t.s()));
  }
  {
    Timer t;
    int disagree = 0, checked = 0;
    for (int N : {3, 4}) {
      const int rk = so_rank(N);
      const int rm = so_rank(N - 1);
      // enumerate all valid kappa, xi with entries <= 8
      std::vector<Weight> kappas, xis;
      {
        std::vector<long> v(rk, 0);
        auto rec = [&](auto&& self, int pos, long lo) -> void {
          if (pos == rk) {
            Weight w;
            w.twice = v;
            if (valid_weight(N, w)) kappas.push_back(w);
            return;
          }
          for (long x = (pos == 0 && N % 2 == 0) ? -16 : lo; x <= 16; x += 2) {
            v[pos] = x;
            self(self, pos + 1, x);
          }
        };
        rec(rec, 0, 0);
      }
      {
        std::vector<long> v(rm, 0);
        auto rec = [&](auto&& self, int pos, long lo) -> void {
          if (pos == rm) {
            Weight w;
            w.twice = v;
            if (valid_weight(N - 1, w)) xis.push_back(w);
            return;
          }
          for (long x = (pos == 0 && (N - 1) % 2 == 0) ? -16 : lo; x <= 16;
               x += 2) {
            v[pos] = x;
            self(self, pos + 1, x);
          }
        };
        rec(rec, 0, 0);
      }
      for (const auto& ka : kappas)
        for (const auto& xi : xis) {
          const auto [a, b] = branching_reciprocity(N, ka, xi);
          if (a != b) ++disagree;
          ++checked;
        }
    }
    rep.diagnostics["reciprocity_pairs_checked"] = checked;
    rep.checks.push_back(check_true("branching.reciprocity_brute_force",
                                    disagree == 0, disagree, t.s()));
  }
  {
    Timer t;
    int bad = 0;
    for (long s = 1; s <= 3; ++s)
      for (long x1 = s; x1 <= 6; ++x1) {
        const auto lp = SeriesLabel::discrete(4, s, weight_from_ints({x1}));
        const auto lm = SeriesLabel::discrete(4, -s, weight_from_ints({x1}));
        if (contains_k_singlet(lp) || contains_k_singlet(lm)) ++bad;
        const auto cp = k_content(lp, 6);
        const auto cm = k_content(lm, 6);
        for (const auto& w : cp)
          for (const auto& v : cm)
            if (w == v) ++bad;
      }
    rep.checks.push_back(check_true("branching.discrete_no_singlet_disjoint",
                                    bad == 0, bad, t.s()));
  }
  {
    Timer t;
    // class-1 dichotomy: the singlet occurs iff xi = 0 (principal)
    int bad = 0;
    for (int N : {3, 4}) {
      const int rm = so_rank(N - 1);
      std::vector<long> v(rm, 0);
      auto rec = [&](auto&& self, int pos, long lo) -> void {
        if (pos == rm) {
          Weight xi;
          xi.twice = v;
          if (!valid_weight(N - 1, xi)) return;
          const bool has = contains_k_singlet(SeriesLabel::principal(N, xi));
          if (has != xi.is_zero()) ++bad;
          return;
        }
        for (long x = (pos == 0 && (N - 1) % 2 == 0) ? -12 : lo; x <= 12;
             x += 2) {
          v[pos] = x;
          self(self, pos + 1, x);
        }
      };
      rec(rec, 0, 0);
    }
    rep.checks.push_back(
        check_true("branching.class1_iff_spherical", bad == 0, bad, t.s()));
  }
  return rep;
}

RunReport run(const ExperimentConfig& cfg, const std::string& preset) {
  RunReport rep;
  if (preset == "oracle")
    rep = run_oracle(cfg);
  else if (preset == "fiber-scan")
    rep = run_fiber_scan(cfg);
  else if (preset == "groundstate")
    rep = run_groundstate(cfg);
  else if (preset == "verify")
    rep = run_verify(cfg);
  else if (preset == "flat")
    rep = run_flat(cfg);
  else if (preset == "branching")
    rep = run_branching(cfg);
  else
    throw std::invalid_argument("unknown preset: " + preset);
  write_json_atomic(cfg.out_dir + "/report_" + rep.preset + ".json",
                    rep.to_json());
  return rep;
}

nlohmann::json compare_geometries(const RunReport& hyp,
                                  const RunReport& flat) {
  if (hyp.geometry != "hyperbolic" || flat.geometry != "flat")
    throw std::invalid_argument("compare_geometries: geometry tag mismatch");
  nlohmann::json j;
  auto row = [](const RunReport& r) {
    nlohmann::json o;
    o["preset"] = r.preset;
    o["ground_state_family"] = r.diagnostics.value(
        "ground_state_family", std::string("(not reported)"));
    if (r.diagnostics.contains("norm_argmax_omega"))
      o["norm_argmax_omega"] = r.diagnostics["norm_argmax_omega"];
    if (r.diagnostics.contains("gap")) o["gap"] = r.diagnostics["gap"];
    if (r.diagnostics.contains("omega_ball_mass"))
      o["normalizability"] = {{"ball_mass_growth",
                               r.diagnostics["omega_ball_mass"]},
                              {"square_integrable", false}};
    if (r.diagnostics.contains("global_mass_growth"))
      o["normalizability"] = {{"ball_mass_growth",
                               r.diagnostics["global_mass_growth"]},
                              {"square_integrable", false}};
    return o;
  };
  j["hyperbolic"] = row(hyp);
  j["flat"] = row(flat);
  j["degeneracy_contrast"] =
      "hyperbolic: infinite ground-state family carried by the limit of the "
      "spherical principal series; flat: unique translation-invariant ground "
      "state (singlet)";
  j["warnings"] = nlohmann::json::array();
  if (hyp.to_json() == flat.to_json())
    j["warnings"].push_back("degenerate-diff: reports are identical");
  return j;
}

}  // namespace hgs
