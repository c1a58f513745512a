#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hgs/experiment.hpp"
#include "hgs/toml.hpp"
#include "hgs/weights.hpp"

namespace {

hgs::ExperimentConfig load_config(const std::string& path,
                                  const std::string& out_dir,
                                  std::uint64_t seed, bool square,
                                  int refine) {
  hgs::ExperimentConfig cfg;
  if (!path.empty()) {
    cfg = hgs::ExperimentConfig::from_file(path);
  } else {
    // built-in defaults: N=2, nu=2 gauss_cosh chain, omega in [0,4]
    for (double w = 0.0; w <= 4.0 + 1e-12; w += 0.1) cfg.omega_grid.push_back(w);
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed != 0) cfg.seed = seed;
  if (square) cfg.square = true;
  for (int i = 1; i < refine; ++i) cfg.fiber_grid = cfg.fiber_grid.refined(1.5);
  return cfg;
}

int run_preset(const std::string& preset, const std::string& config,
               const std::string& out, std::uint64_t seed, bool square,
               int refine, bool quiet) {
  try {
    const hgs::ExperimentConfig cfg =
        load_config(config, out, seed, square, refine);
    const hgs::RunReport rep = hgs::run(cfg, preset);
    rep.print(std::cout, quiet);
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis and transfer-operator lab on H_N"};
  app.require_subcommand(1);

  std::string config, out;
  std::uint64_t seed = 0;
  bool square = false, quiet = false;
  int refine = 1;
  app.add_option("--config", config, "TOML or JSON experiment config");
  app.add_option("--out", out, "output directory for artifacts");
  app.add_option("--seed", seed, "seed for randomized sampling");
  app.add_flag("--square", square, "replace T by T^2 in norm estimates");
  app.add_option("--refine", refine, "extra grid refinement steps");
  app.add_flag("--quiet", quiet, "suppress headers");

  for (const std::string preset :
       {"oracle", "fiber-scan", "groundstate", "verify", "flat"}) {
    auto* sc = app.add_subcommand(
        preset, "run the '" + preset + "' experiment preset");
    sc->callback([&, preset]() {
      std::exit(run_preset(preset, config, out, seed, square, refine, quiet));
    });
  }

  auto* br = app.add_subcommand("branching",
                                "K-content tables and exact branching checks");
  bool br_json = false;
  br->add_flag("--json", br_json, "emit JSON instead of text tables");
  br->callback([&]() {
    try {
      const hgs::ExperimentConfig cfg =
          load_config(config, out, seed, square, refine);
      // content tables for a few canonical labels
      using hgs::SeriesLabel;
      using hgs::weight_from_ints;
      std::vector<SeriesLabel> labels = {
          SeriesLabel::principal(3, weight_from_ints({0})),
          SeriesLabel::principal(3, weight_from_ints({1})),
          SeriesLabel::principal(4, weight_from_ints({2})),
          SeriesLabel::discrete(4, 1, weight_from_ints({1})),
          SeriesLabel::discrete(4, -1, weight_from_ints({1})),
      };
      nlohmann::json tables = nlohmann::json::array();
      for (const auto& l : labels) {
        const auto content = hgs::k_content(l, 8);
        if (br_json)
          tables.push_back(hgs::content_to_json(l, content));
        else
          hgs::print_content(std::cout, l, content);
      }
      if (br_json) std::cout << tables.dump(2) << '\n';
      const hgs::RunReport rep = hgs::run(cfg, "branching");
      rep.print(std::cout, quiet);
      std::exit(rep.all_pass() ? 0 : 1);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    }
  });

  auto* cmp = app.add_subcommand(
      "compare", "contrast hyperbolic and flat ground-state reports");
  std::string hyp_path, flat_path;
  cmp->add_option("hyperbolic_report", hyp_path,
                  "report_groundstate.json from a hyperbolic run")
      ->required();
  cmp->add_option("flat_report", flat_path, "report_flat.json from a flat run")
      ->required();
  cmp->callback([&]() {
    try {
      std::ifstream h(hyp_path), f(flat_path);
      if (!h) throw std::runtime_error("missing report file: " + hyp_path);
      if (!f) throw std::runtime_error("missing report file: " + flat_path);
      const auto hj = nlohmann::json::parse(h);
      const auto fj = nlohmann::json::parse(f);
      const auto contrast =
          hgs::compare_geometries(hgs::RunReport::from_json(hj),
                                  hgs::RunReport::from_json(fj));
      std::cout << contrast.dump(2) << '\n';
      if (!out.empty())
        hgs::write_json_atomic(out + "/compare.json", contrast);
      std::exit(0);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      std::exit(2);
    }
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
