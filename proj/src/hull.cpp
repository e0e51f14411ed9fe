#include "qcval/hull.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace qcval {
namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double norm2(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double length(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Orthonormal pair (u, v) with u x v = n.
std::pair<Vec3, Vec3> plane_basis(const Vec3& n) {
  Vec3 helper = std::abs(n[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = cross3(helper, n);
  double lu = length(u);
  u = {u[0] / lu, u[1] / lu, u[2] / lu};
  Vec3 v = cross3(n, u);
  return {u, v};
}

// Indices of `pts` forming the counterclockwise hull of their projection on
// the plane with normal n.
std::vector<int> planar_loop(const std::vector<Vec3>& pts, const std::vector<int>& ids,
                             const Vec3& n, double tol) {
  auto [u, v] = plane_basis(n);
  std::vector<Vec2> proj;
  proj.reserve(ids.size());
  for (int id : ids) proj.push_back({dot(pts[id], u), dot(pts[id], v)});
  std::vector<Vec2> hull = convex_hull_2d(proj, tol);
  std::vector<int> loop;
  for (const Vec2& h : hull) {
    for (std::size_t j = 0; j < proj.size(); ++j) {
      if (proj[j] == h) {
        loop.push_back(ids[j]);
        break;
      }
    }
  }
  return loop;
}

}  // namespace

std::vector<Vec2> convex_hull_2d(std::span<const Vec2> points, double tol) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end());
  std::vector<Vec2> uniq;
  for (const Vec2& q : p) {
    bool dup = false;
    for (const Vec2& w : uniq) {
      if (norm2(q, w) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(q);
  }
  if (uniq.size() <= 2) return uniq;

  // Andrew's monotone chain; a middle point within tol of the chord is dropped.
  std::vector<Vec2> hull(2 * uniq.size());
  std::size_t k = 0;
  auto keep = [&](const Vec2& q) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= tol * norm2(q, hull[k - 2])) --k;
    hull[k++] = q;
  };
  for (const Vec2& q : uniq) keep(q);
  const std::size_t lower = k + 1;
  for (std::size_t i = uniq.size() - 1; i-- > 0;) {
    const Vec2& q = uniq[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], q) <= tol * norm2(q, hull[k - 2])) --k;
    hull[k++] = q;
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && norm2(hull[0], hull[1]) <= tol) hull.resize(1);
  return hull;
}

Hull3 convex_hull_3d(std::span<const Vec3> points, double tol) {
  Hull3 out;
  if (points.empty()) return out;
  const std::vector<Vec3> pts(points.begin(), points.end());
  const int n = static_cast<int>(pts.size());

  Vec3 centroid{0, 0, 0};
  for (const Vec3& q : pts)
    for (int d = 0; d < 3; ++d) centroid[d] += q[d] / n;
  Eigen::MatrixXd centered(n, 3);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < 3; ++d) centered(i, d) = pts[i][d] - centroid[d];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  // Singular values scale like sqrt(n) * extent.
  const double cutoff = tol * std::sqrt(static_cast<double>(n));
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  out.dimension = rank;

  if (rank == 0) {
    out.vertices = {pts[0]};
    return out;
  }
  if (rank == 1) {
    Vec3 dir{svd.matrixV()(0, 0), svd.matrixV()(1, 0), svd.matrixV()(2, 0)};
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
      return dot(a, dir) < dot(b, dir);
    });
    out.vertices = {*lo, *hi};
    return out;
  }

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;

  std::vector<PolytopeFace> faces;
  if (rank == 2) {
    Vec3 nrm{svd.matrixV()(0, 2), svd.matrixV()(1, 2), svd.matrixV()(2, 2)};
    PolytopeFace face;
    face.normal = nrm;
    face.offset = dot(nrm, centroid);
    face.loop = planar_loop(pts, all, nrm, tol);
    faces.push_back(std::move(face));
  } else {
    // Every facet plane is spanned by three input points with all others on
    // one side; enumerate triples and keep distinct supporting planes.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          Vec3 nrm = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
          double len = length(nrm);
          if (len <= tol * std::max(length(sub(pts[j], pts[i])), length(sub(pts[k], pts[i]))))
            continue;
          nrm = {nrm[0] / len, nrm[1] / len, nrm[2] / len};
          double off = dot(nrm, pts[i]);
          bool below = true, above = true;
          for (const Vec3& q : pts) {
            double s = dot(nrm, q) - off;
            if (s > tol) below = false;
            if (s < -tol) above = false;
          }
          if (!below && !above) continue;
          if (!below) {
            nrm = {-nrm[0], -nrm[1], -nrm[2]};
            off = -off;
          }
          bool seen = false;
          for (const PolytopeFace& f : faces) {
            if (dot(f.normal, nrm) > 1.0 - 1e-9 && std::abs(f.offset - off) <= tol) {
              seen = true;
              break;
            }
          }
          if (seen) continue;
          std::vector<int> on_plane;
          for (int q = 0; q < n; ++q)
            if (std::abs(dot(nrm, pts[q]) - off) <= tol) on_plane.push_back(q);
          PolytopeFace face;
          face.normal = nrm;
          face.offset = off;
          face.loop = planar_loop(pts, on_plane, nrm, tol);
          if (face.loop.size() >= 3) faces.push_back(std::move(face));
        }
      }
    }
  }

  // Re-index onto the extreme points only.
  std::vector<int> remap(n, -1);
  for (PolytopeFace& f : faces) {
    for (int& id : f.loop) {
      if (remap[id] < 0) {
        remap[id] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts[id]);
      }
      id = remap[id];
    }
  }
  out.faces = std::move(faces);
  return out;
}

}  // namespace qcval
