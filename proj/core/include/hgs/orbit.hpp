#pragma once

#include <vector>

#include "hgs/minkowski.hpp"

namespace hgs {

// nu-site configuration m = (q_1,...,q_nu) on H_N^nu.
struct Config {
  std::vector<HPoint> sites;

  int nu() const { return static_cast<int>(sites.size()); }
  int N() const { return sites.empty() ? 0 : sites[0].N(); }
};

Config make_config(std::vector<HPoint> sites);

// (q_1, n_2..n_nu) with n_i = g_s(q_1)^{-1} q_i.
struct OrbitCoords {
  HPoint q1;
  std::vector<HPoint> n;
};

OrbitCoords orbit_split(const Config& m);
Config orbit_join(const OrbitCoords& oc);

// Diagonal action d(g)m = (g q_1, ..., g q_nu).
Config diagonal_act(const LorentzElement& g, const Config& m);

}  // namespace hgs
