#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgs/fiber.hpp"
#include "hgs/flat.hpp"
#include "hgs/halfline.hpp"
#include "hgs/transfer.hpp"
#include "hgs/weights.hpp"

namespace hgs {

struct ExperimentConfig {
  std::string geometry = "hyperbolic";  // hyperbolic | flat | halfline
  KernelSpec kernel;
  FlatKernelSpec flat_kernel;
  std::vector<double> omega_grid;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool square = false;
  int refine = 1;
  FiberGridParams fiber_grid;
  FlatGridParams flat_grid;
  double halfline_x_max = 40.0;
  int halfline_panels = 2000;
  // global-norm grid (criterion: fiber-vs-global consistency)
  double global_r1_max = 18.0;
  int global_n_r1 = 48;
  int global_n_rho = 12;
  int global_n_chi = 12;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
};

struct CheckRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_s = 0.0;
};

struct RunReport {
  std::string preset;
  std::string geometry;
  std::vector<CheckRow> checks;
  nlohmann::json diagnostics = nlohmann::json::object();

  bool all_pass() const;
  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  void print(std::ostream& os, bool quiet = false) const;
};

// Atomic artifact writes (tmp + rename).
void write_text_atomic(const std::string& path, const std::string& text);
void write_json_atomic(const std::string& path, const nlohmann::json& j);

// Report payload with wall times zeroed; equal fingerprints mean the runs
// were reproducible bit-for-bit.
nlohmann::json report_fingerprint(const RunReport& rep);

RunReport run_oracle(const ExperimentConfig& cfg);
RunReport run_fiber_scan(const ExperimentConfig& cfg);
RunReport run_groundstate(const ExperimentConfig& cfg);
RunReport run_verify(const ExperimentConfig& cfg);
RunReport run_flat(const ExperimentConfig& cfg);
RunReport run_branching(const ExperimentConfig& cfg);

// Dispatch by preset name; writes report_<preset>.json and data artifacts
// under cfg.out_dir.
RunReport run(const ExperimentConfig& cfg, const std::string& preset);

// Structured degeneracy contrast of the hyperbolic vs flat ground-state
// sectors; throws on geometry tag mismatch.
nlohmann::json compare_geometries(const RunReport& hyp, const RunReport& flat);

}  // namespace hgs
