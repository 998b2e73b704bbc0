#pragma once

// Discrete approximations of the surface measure on the unit quasi-sphere.

#include <vector>

#include "fhardy/group.hpp"

namespace fhardy {

struct AngularRule {
  std::vector<Point> omega;  // nodes on the unit quasi-sphere
  std::vector<double> weight;

  std::size_t size() const { return omega.size(); }
  double total() const;
};

/// Full rule at resolution `n` (base node count along the principal angle).
/// Nodes are pushed from the Euclidean sphere onto the quasi-sphere with the
/// polar-coordinate Jacobian folded into the weights.
AngularRule angular_rule(const Geometry& geom, int n);

/// Rule for integrands invariant under the symmetry reported by
/// Geometry::rotation_symmetric(): the azimuth (or the reflection for N = 1)
/// is summed analytically.
AngularRule reduced_angular_rule(const Geometry& geom, int n);

/// Node count at refinement level `level` (x1.5 per level).
int angular_resolution(int base, int level);

}  // namespace fhardy
