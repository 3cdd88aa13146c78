// Shared helpers for the unit tests.
#pragma once

#include <random>

#include "hgcalc/catalog.hpp"
#include "hgcalc/group.hpp"
#include "hgcalc/point.hpp"

namespace hgtest {

inline hgcalc::Point random_point(std::mt19937_64& rng, int n, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  hgcalc::Point p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

inline std::vector<hgcalc::GroupSpec> shipped_groups() {
  std::vector<hgcalc::GroupSpec> out;
  for (const auto& id : hgcalc::shipped_group_ids()) out.push_back(hgcalc::resolve_group(id));
  return out;
}

}  // namespace hgtest
