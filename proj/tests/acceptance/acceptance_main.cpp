// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full desk-scale experiment battery.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hgs/experiment.hpp"
#include "hgs/representation.hpp"
#include "hgs/special.hpp"

using namespace hgs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Gate {
  int failures = 0;

  void line(const std::string& name, bool pass, double value, double budget_s,
            double wall_s) {
    std::printf("[%s] %-58s value=%-12.5g (%.1fs/%.0fs)\n",
                pass ? "PASS" : "FAIL", name.c_str(), value, wall_s, budget_s);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ExperimentConfig base_config(double beta) {
  ExperimentConfig cfg;
  cfg.geometry = "hyperbolic";
  cfg.kernel.N = 2;
  cfg.kernel.nu = 2;
  cfg.kernel.h = {FactorFamily::gauss_cosh, beta};
  cfg.kernel.w = LinkFactor{FactorFamily::gauss_cosh, beta};
  cfg.kernel.adjacency = {{0, 1}};
  for (double w = 0.0; w <= 4.0 + 1e-12; w += 0.1) cfg.omega_grid.push_back(w);
  cfg.out_dir = "acceptance_out";
  cfg.seed = 20240817;
  return cfg;
}

}  // namespace

int main() {
  Gate gate;

  // 1. half-line oracle at the paper-given numbers
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    const RunReport rep = run_oracle(cfg);
    bool pass = true;
    double worst = 0.0;
    for (const auto& c : rep.checks) {
      if (c.name.rfind("halfline.eigen_residual", 0) == 0 ||
          c.name == "halfline.iterated2_closed_form" ||
          c.name == "halfline.parseval")
        worst = std::max(worst, c.value);
      pass = pass && c.pass;
    }
    const double wall = wall_since(t0);
    gate.line("1 half-line oracle (lambda, iterated kernel, Parseval)",
              pass && wall <= 30.0, worst, 30.0, wall);
  }

  // 2. norm-curve maximum at omega=0 with 10x-refinement margin, both betas
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    double min_margin_ratio = 1e300;
    for (double beta : {0.5, 1.0}) {
      ExperimentConfig cfg = base_config(beta);
      const RunReport rep = run_fiber_scan(cfg);
      pass = pass && rep.all_pass();
      for (const auto& c : rep.checks)
        if (c.name == "fiber.margin_vs_10x_refinement")
          min_margin_ratio = std::min(min_margin_ratio, c.value);
    }
    const double wall = wall_since(t0);
    gate.line("2 norm curve: argmax omega=0, strict decrease, margin",
              pass && wall <= 600.0, min_margin_ratio, 600.0, wall);
  }

  // 3. ground-state synthesis: positivity, gap, residual, boost decay
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    const RunReport gsrep = run_groundstate(cfg);
    bool pass = gsrep.all_pass();
    double gap = 0.0, resid = 0.0;
    for (const auto& c : gsrep.checks)
      if (c.name == "gs.spectral_gap") gap = c.value;
    const GroundStateField gs =
        ground_state_00(cfg.kernel, cfg.fiber_grid.refined());
    const SynthesizedState st = synthesize_ground_state(gs, 64);
    std::mt19937_64 rng(cfg.seed + 31);
    std::uniform_real_distribution<double> ur(0.0, 2.0), ua(0.0, 2.0 * kPi);
    std::vector<Config> samples;
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXd d1(2), d2(2);
      const double a1 = ua(rng), a2 = ua(rng);
      d1 << std::cos(a1), std::sin(a1);
      d2 << std::cos(a2), std::sin(a2);
      samples.push_back(
          Config{{hpoint_polar(ur(rng), d1), hpoint_polar(ur(rng), d2)}});
    }
    const EigenstateReport er =
        verify_eigenstate(cfg.kernel, st, samples, 6.0, 36, 64);
    resid = er.max_rel_residual;
    pass = pass && resid <= 1e-2 && gap < 0.95;
    const double wall = wall_since(t0);
    gate.line("3 ground state: psi0>0, gap<0.95, TOmega=lambda Omega @1e-2",
              pass, resid, 900.0, wall);
  }

  // 4. equivariance of the tau map at L=32
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    const GroundStateField gs = ground_state_00(cfg.kernel, cfg.fiber_grid);
    const SynthesizedState st = synthesize_ground_state(gs, 128);
    std::mt19937_64 rng(cfg.seed + 77);
    std::uniform_real_distribution<double> ur(-1.0, 1.0), ua(0.0, 2.0 * kPi);
    std::vector<LorentzElement> gels;
    for (int i = 0; i < 10; ++i)
      gels.push_back(rotation_so12(ua(rng)) * boost_a(2, ur(rng)) *
                     rotation_so12(ua(rng)));
    std::vector<Config> samples;
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd d1(2), d2(2);
      const double a1 = ua(rng), a2 = ua(rng);
      d1 << std::cos(a1), std::sin(a1);
      d2 << std::cos(a2), std::sin(a2);
      samples.push_back(Config{{hpoint_polar(0.8 * std::abs(ur(rng)), d1),
                                hpoint_polar(0.8 * std::abs(ur(rng)), d2)}});
    }
    const EquivarianceReport eq = equivariance_check(st, gels, samples, 32);
    const double wall = wall_since(t0);
    gate.line("4 tau-map equivariance (10 group elements, L=32) @1e-4",
              eq.max_rel_deviation <= 1e-4, eq.max_rel_deviation, 600.0, wall);
  }

  // 5. fiber-vs-global norm consistency
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    std::vector<double> omegas;
    for (double w = 0.0; w <= 2.0 + 1e-12; w += 0.25) omegas.push_back(w);
    const NormCurve c = norm_curve(cfg.kernel, omegas, cfg.fiber_grid, false);
    double fmax = 0.0;
    for (double v : c.norm) fmax = std::max(fmax, v);
    const double global = global_norm_reduced(
        cfg.kernel, cfg.global_r1_max, cfg.global_n_r1, cfg.fiber_grid.r_max,
        cfg.global_n_rho, cfg.global_n_chi);
    const double rel = std::abs(global - fmax) / fmax;
    const double wall = wall_since(t0);
    gate.line("5 |power-iteration norm - max_w fiber norm|/norm @1e-2",
              rel <= 1e-2, rel, 900.0, wall);
  }

  // 6. harmonic-analysis identities
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    double worst = 0.0;
    // addition theorem at L=32, N=2
    {
      Eigen::VectorXd d1(2), d2(2);
      d1 << 1.0, 0.0;
      d2 << 0.19866933, 0.98006658;
      const double resid = addition_theorem_residual(
          1.1, hpoint_polar(0.9, d1), hpoint_polar(1.3, d2), 32, 512);
      pass = pass && resid <= 1e-6;
      worst = std::max(worst, resid);
    }
    // plane-wave sphere-average limit
    for (int N : {2, 3}) {
      const double lim = conical_average(0.8, 1.0 + 1e-14, N, 256);
      const double err = std::abs(lim - sphere_area(N));
      pass = pass && err <= 1e-8;
      worst = std::max(worst, err);
    }
    // Plancherel closed forms
    for (double w : {0.25, 0.5, 1.0, 2.0, 3.5}) {
      const double e2 = std::abs(plancherel_density(w, 2) -
                                 w * std::tanh(kPi * w) /
                                     std::pow(2.0 * kPi, 2));
      const double e3 = std::abs(plancherel_density(w, 3) -
                                 w * w / std::pow(2.0 * kPi, 3));
      pass = pass && e2 <= 1e-12 && e3 <= 1e-12;
      worst = std::max({worst, e2, e3});
    }
    // Helgason round trip at the spec scale
    {
      HyperboloidRule rule = hyperboloid_quadrature(2, 6.0, 48, 32, "r");
      std::vector<double> bump(rule.size());
      Eigen::VectorXd dir(2);
      dir << 0.6, 0.8;
      const HPoint q0 = hpoint_polar(0.8, dir);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double d =
            std::acosh(std::max(1.0, mink_dot(rule.q[i].v, q0.v)));
        bump[i] = std::exp(-2.0 * d * d);
      }
      const HelgasonCoefficients hb =
          helgason_transform(bump, rule, 16, 8.0, 160);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < rule.size(); i += 5) {
        const double rec = helgason_synthesis(hb, rule.q[i]);
        num += rule.w[i] * (rec - bump[i]) * (rec - bump[i]);
        den += rule.w[i] * bump[i] * bump[i];
      }
      const double rel = std::sqrt(num / den);
      pass = pass && rel <= 1e-3;
      worst = std::max(worst, rel);
    }
    // unitarity and homomorphism of the principal action
    {
      std::mt19937_64 rng(5);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      KFunction f = KFunction::zero(2, 32);
      for (Eigen::Index i = 0; i < f.coeff.size(); ++i)
        f.coeff(i) =
            cplx(u(rng), u(rng)) * std::exp(-0.9 * std::abs(double(i) - 32.0));
      const LorentzElement g1 = rotation_so12(0.3) * boost_a(2, 0.7);
      const LorentzElement g2 = boost_a(2, -0.4) * rotation_so12(1.1);
      const KFunction a =
          principal_action(0.9, g1, principal_action(0.9, g2, f, 6), 6);
      const KFunction b = principal_action(0.9, g1 * g2, f, 6);
      const double hom = (a.coeff - b.coeff).cwiseAbs().maxCoeff();
      const double uni =
          std::abs(principal_action(0.9, g1, f, 6).norm_sq() - f.norm_sq()) /
          f.norm_sq();
      pass = pass && hom <= 1e-8 && uni <= 1e-8;
      worst = std::max({worst, hom, uni});
    }
    const double wall = wall_since(t0);
    gate.line("6 harmonic identities (addition, limits, density, Helgason)",
              pass, worst, 600.0, wall);
  }

  // 7. branching combinatorics, exact
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    const RunReport rep = run_branching(cfg);
    const double wall = wall_since(t0);
    gate.line("7 branching combinatorics (exact, <=5s)",
              rep.all_pass() && wall <= 5.0, rep.all_pass() ? 0.0 : 1.0, 5.0,
              wall);
  }

  // 8. flat control suite and geometry contrast
  {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base_config(1.0);
    cfg.geometry = "flat";
    cfg.flat_kernel.beta_h = 1.0;
    cfg.flat_kernel.beta_w = 1.0;
    const RunReport frep = run_flat(cfg);
    ExperimentConfig hcfg = base_config(1.0);
    const RunReport hrep = run_groundstate(hcfg);
    const nlohmann::json contrast = compare_geometries(hrep, frep);
    const std::string hfam = contrast["hyperbolic"]["ground_state_family"];
    const std::string ffam = contrast["flat"]["ground_state_family"];
    const bool contrast_ok = hfam.find("infinite") != std::string::npos &&
                             ffam.find("unique") != std::string::npos;
    write_json_atomic(cfg.out_dir + "/compare.json", contrast);
    double worst = 0.0;
    for (const auto& c : frep.checks) worst = std::max(worst, c.value);
    const double wall = wall_since(t0);
    gate.line("8 flat control (curve, oracle, unique invariant gs, contrast)",
              frep.all_pass() && contrast_ok, worst, 900.0, wall);
  }

  std::printf("%s\n", gate.failures == 0 ? "ACCEPTANCE: ALL PASS"
                                         : "ACCEPTANCE: FAILURES");
  return gate.failures == 0 ? 0 : 1;
}
