#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hgs/orbit.hpp"
#include "hgs/quadrature.hpp"

#include "json.hpp"

namespace hgs {

// Strictly positive on-link factor applied to c = q.q' (c >= 1 on H_N):
//   gauss_cosh: exp(-beta (c-1))
//   exp_cosh  : exp(-beta c)
enum class FactorFamily { gauss_cosh, exp_cosh };

struct LinkFactor {
  FactorFamily family = FactorFamily::gauss_cosh;
  double beta = 1.0;

  double operator()(double c) const;
  // factor = exp(-beta c + shift)
  double shift() const;
};

FactorFamily family_from_string(const std::string& s);
std::string family_to_string(FactorFamily f);

// Invariant transfer kernel on nu-site chains:
//   T(m,m') = prod_i h(q_i . q'_i) * sqrt(w)(m) sqrt(w)(m'),
//   sqrt(w)(m) = prod_{(i,j) in adjacency} w(q_i . q_j)^{1/2}.
struct KernelSpec {
  int N = 2;
  int nu = 2;
  LinkFactor h;
  std::optional<LinkFactor> w = LinkFactor{};
  std::vector<std::pair<int, int>> adjacency = {{0, 1}};

  nlohmann::json to_json() const;
  static KernelSpec from_json(const nlohmann::json& j);
};

double kernel_eval(const KernelSpec& spec, const Config& m, const Config& mp);

// sqrt(w)(m), the symmetric intra-slice half-factor.
double half_intra_factor(const KernelSpec& spec, const Config& m);

// Reduced kernel on (G x N x N): T(g,n,n') = T((g^{-1}q^, g^{-1}n),(q^, n')).
struct ReducedKernel {
  KernelSpec spec;

  double eval(const LorentzElement& g, const std::vector<HPoint>& n,
              const std::vector<HPoint>& np) const;
};

// sup_m int dgamma(m') T(m,m'), estimated on a grid of relative separations
// with an a-posteriori tail estimate from truncation growth. Throws when the
// tail exceeds the budget.
struct RowIntegrabilityReport {
  double bound = 0.0;       // K_T
  double tail_estimate = 0.0;
  double argmax_rho = 0.0;  // separation at which the sup was attained
};

RowIntegrabilityReport check_row_integrability(const KernelSpec& spec,
                                               double r_max = 8.0,
                                               int radial = 48, int angular = 24,
                                               double tail_budget = 1e-6);

// int dg dn dn' |T(g,n,n')|^2 (condition (C), nu=2). The dk integral drops
// by the right K-covariance of the reduced kernel. Returns the estimate at
// increasing truncations; the caller sees a divergence flag if the
// increments fail to decrease.
struct ConditionCReport {
  double value = 0.0;
  std::vector<double> at_truncation;  // three growing truncations
  bool converged = true;
};

ConditionCReport check_condition_C(const KernelSpec& spec,
                                   double theta_max = 8.0, double t_max = 8.0,
                                   double r_max = 6.0);

// Product grid over nu copies of a single-site rule, for discretizing T.
struct ConfigGrid {
  HyperboloidRule site;
  int nu = 2;

  std::size_t size() const;
  Config config(std::size_t idx) const;
  double weight(std::size_t idx) const;
};

// (T psi)(m) by quadrature over the grid; psi sampled on the grid.
double apply_operator(const KernelSpec& spec, const std::vector<double>& psi,
                      const ConfigGrid& grid, const Config& m);

// Dense symmetric discretization B_ij = sqrt(W_i) T(m_i, m_j) sqrt(W_j).
Eigen::MatrixXd assemble_config_matrix(const KernelSpec& spec,
                                       const ConfigGrid& grid);

struct NormEstimate {
  double lambda = 0.0;
  std::string method;  // "power_iteration" | "fiber_sup"
  struct TraceRow {
    int iter;
    double rayleigh;
    double residual;
  };
  std::vector<TraceRow> trace;

  void write_csv(std::ostream& os) const;
};

// Power iteration on a symmetric matrix; residual = |B v - lambda v|_2.
NormEstimate power_iteration(const Eigen::MatrixXd& B, int iters,
                             double tol = 1e-12, unsigned seed = 1234);

NormEstimate power_iteration_norm(const KernelSpec& spec,
                                  const ConfigGrid& grid, int iters = 200);

// ||T|| on the K-invariant sector: configurations (q1, n) reduced by the
// diagonal rotation, angle integral in closed Bessel form (N=2, nu=2).
// Approaches ||T|| from below as r1_max grows. With square=true the
// iteration runs on T^2 (positivity guard) and reports sqrt of its top
// eigenvalue.
NormEstimate global_norm_estimate(const KernelSpec& spec,
                                  double r1_max = 18.0, int n_r1 = 48,
                                  double rho_max = 6.0, int n_rho = 12,
                                  int n_chi = 12, int iters = 300,
                                  bool square = false);

double global_norm_reduced(const KernelSpec& spec, double r1_max = 18.0,
                           int n_r1 = 48, double rho_max = 6.0, int n_rho = 12,
                           int n_chi = 12, int iters = 300);

// Renormalized-orbit probe: Omega_t = T^t v / (v, T^t v) on the grid.
struct OrbitProbe {
  std::vector<int> t_values;
  std::vector<Eigen::VectorXd> omega_t;   // sampled functions on the grid
  std::vector<double> patch_sup_diff;     // sup over patch of consecutive diff
  std::vector<double> lambda_ratio;       // (v,T^{t+1}v)/(v,T^t v)
  bool rescaled = false;                  // underflow rescue applied
};

OrbitProbe renormalized_orbit(const KernelSpec& spec, const ConfigGrid& grid,
                              const std::vector<double>& seed,
                              const std::vector<int>& t_schedule,
                              double patch_radius = 1.5);

}  // namespace hgs
