/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cmath>
#include <numbers>

#include "core/mobility.hpp"

namespace cvminer::testing {

// Point-in-region written from polar coordinates directly.
inline bool polar_in_region(Point p, Community c, const RegionGeometry& g) {
  double r = std::hypot(p.x, p.y);
  if (c == Community::Compound) return r < g.disk_radius;
  if (r < g.disk_radius || r > g.outer_radius) return false;
  double a = std::atan2(p.y, p.x);
  if (a < 0) a += 2 * std::numbers::pi;
  int quadrant = int(a / (std::numbers::pi / 2));
  static const Community order[] = {Community::Government, Community::GrassRoots, Community::StateOwnedEnterprise,
                                    Community::NonProfit};
  return order[quadrant % 4] == c;
}

// Pairs closer than (ri + rj)(1 - eps).
inline int count_overlaps(const MobilitySnapshot& s, double eps) {
  int n = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < s.nodes.size(); ++j) {
      const auto& a = s.nodes[i];
      const auto& b = s.nodes[j];
      double d = std::hypot(a.position.x - b.position.x, a.position.y - b.position.y);
      n += d < (a.radius + b.radius) * (1 - eps);
    }
  return n;
}

}  // namespace cvminer::testing
