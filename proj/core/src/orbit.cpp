#include "hgs/orbit.hpp"

#include <stdexcept>

namespace hgs {

Config make_config(std::vector<HPoint> sites) {
  if (sites.size() < 2) throw std::invalid_argument("Config: nu >= 2");
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (sites[i].N() != sites[0].N())
      throw std::invalid_argument("Config: mixed dimensions");
  return Config{std::move(sites)};
}

OrbitCoords orbit_split(const Config& m) {
  if (m.nu() < 2) throw std::invalid_argument("orbit_split: nu >= 2");
  OrbitCoords oc;
  oc.q1 = m.sites[0];
  const LorentzElement ginv = boost_section(m.sites[0]).inverse();
  oc.n.reserve(m.sites.size() - 1);
  for (std::size_t i = 1; i < m.sites.size(); ++i)
    oc.n.push_back(ginv.act(m.sites[i]));
  return oc;
}

Config orbit_join(const OrbitCoords& oc) {
  Config m;
  m.sites.reserve(oc.n.size() + 1);
  m.sites.push_back(oc.q1);
  const LorentzElement gs = boost_section(oc.q1);
  for (const auto& ni : oc.n) m.sites.push_back(gs.act(ni));
  return m;
}

Config diagonal_act(const LorentzElement& g, const Config& m) {
  Config out;
  out.sites.reserve(m.sites.size());
  for (const auto& q : m.sites) out.sites.push_back(g.act(q));
  return out;
}

}  // namespace hgs
