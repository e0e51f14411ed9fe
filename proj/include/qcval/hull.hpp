#pragma once

#include <span>
#include <vector>

#include "qcval/geometry.hpp"

namespace qcval {

/// Counterclockwise hull with duplicate and collinear points removed.
/// Returns 1 point or 2 points for degenerate input.
std::vector<Vec2> convex_hull_2d(std::span<const Vec2> points, double tol);

struct Hull3 {
  int dimension = -1;
  std::vector<Vec3> vertices;
  std::vector<PolytopeFace> faces;
};

/// Hull of a small point set in R^3 by enumeration of supporting planes.
/// For planar input the result has dimension 2 and a single face; lower
/// dimensions return the extreme points only.
Hull3 convex_hull_3d(std::span<const Vec3> points, double tol);

}  // namespace qcval
