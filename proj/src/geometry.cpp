#include "qcval/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "qcval/errors.hpp"
#include "qcval/hull.hpp"

namespace qcval {
namespace {

constexpr double kRelTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Vec to_vec(const Vec2& p) { return {p[0], p[1]}; }
Vec to_vec(const Vec3& p) { return {p[0], p[1], p[2]}; }
Vec2 to_vec2(std::span<const double> p) { return {p[0], p[1]}; }
Vec3 to_vec3(std::span<const double> p) { return {p[0], p[1], p[2]}; }

Vec3 sub3(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double len3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " has a non-finite coordinate");
}

double segment_point_distance(std::span<const double> a, std::span<const double> b,
                              std::span<const double> x) {
  double ab2 = 0.0, t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    t += (x[i] - a[i]) * (b[i] - a[i]);
  }
  t = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double c = a[i] + t * (b[i] - a[i]) - x[i];
    s += c * c;
  }
  return std::sqrt(s);
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection).
double triangle_point_distance(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  Vec3 ab = sub3(b, a), ac = sub3(c, a), ap = sub3(p, a);
  double d1 = dot3(ab, ap), d2 = dot3(ac, ap);
  if (d1 <= 0 && d2 <= 0) return len3(ap);
  Vec3 bp = sub3(p, b);
  double d3 = dot3(ab, bp), d4 = dot3(ac, bp);
  if (d3 >= 0 && d4 <= d3) return len3(bp);
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    double v = d1 / (d1 - d3);
    return len3(sub3(p, {a[0] + v * ab[0], a[1] + v * ab[1], a[2] + v * ab[2]}));
  }
  Vec3 cp = sub3(p, c);
  double d5 = dot3(ab, cp), d6 = dot3(ac, cp);
  if (d6 >= 0 && d5 <= d6) return len3(cp);
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    double w = d2 / (d2 - d6);
    return len3(sub3(p, {a[0] + w * ac[0], a[1] + w * ac[1], a[2] + w * ac[2]}));
  }
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    Vec3 bc = sub3(c, b);
    return len3(sub3(p, {b[0] + w * bc[0], b[1] + w * bc[1], b[2] + w * bc[2]}));
  }
  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  Vec3 q{a[0] + ab[0] * v + ac[0] * w, a[1] + ab[1] * v + ac[1] * w, a[2] + ab[2] * v + ac[2] * w};
  return len3(sub3(p, q));
}

double polygon_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * s;
}

double polygon_perimeter(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += dist(v[i], v[(i + 1) % v.size()]);
  return s;
}

double face_area(const PolytopeShape& p, const PolytopeFace& f) {
  Vec3 acc{0, 0, 0};
  const Vec3& o = p.vertices[f.loop[0]];
  for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
    Vec3 c = cross3(sub3(p.vertices[f.loop[i]], o), sub3(p.vertices[f.loop[i + 1]], o));
    for (int d = 0; d < 3; ++d) acc[d] += c[d];
  }
  return 0.5 * dot3(acc, f.normal);
}

double face_perimeter(const PolytopeShape& p, const PolytopeFace& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.loop.size(); ++i)
    s += len3(sub3(p.vertices[f.loop[i]], p.vertices[f.loop[(i + 1) % f.loop.size()]]));
  return s;
}

// Elementary symmetric polynomials e_0..e_n of the box side lengths.
std::vector<double> elementary_symmetric(const std::vector<double>& a) {
  std::vector<double> e(a.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j-- > 0;) e[j + 1] += e[j] * a[i];
  return e;
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

bool is_polytopal(const ConvexBody& b) {
  switch (b.kind()) {
    case ShapeKind::Point:
    case ShapeKind::Segment:
    case ShapeKind::Box:
    case ShapeKind::Polygon:
    case ShapeKind::Polytope:
      return true;
    default:
      return false;
  }
}

// Interval [lo, hi] of a body in R^1.
std::pair<double, double> interval_of(const ConvexBody& b) {
  BoundingBox bb = bounding_box(b);
  return {bb.lower[0], bb.upper[0]};
}

ConvexBody interval_body(double lo, double hi) { return ConvexBody::box({lo}, {hi}); }

std::vector<Vec> box_corners(const BoxShape& box) {
  const std::size_t n = box.lower.size();
  if (n > 20) throw UnsupportedShapeDimension("box corner enumeration limited to N <= 20");
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i & 1) ? box.upper[i] : box.lower[i];
    out.push_back(std::move(c));
  }
  return out;
}

// Solves the d x d system picked from `hs`; returns false when singular.
bool solve_planes(const std::vector<HalfSpace>& hs, std::span<const int> pick, Vec& x) {
  const int d = static_cast<int>(pick.size());
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd rhs(d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) a(r, c) = hs[pick[r]].normal[c];
    rhs(r) = hs[pick[r]].offset;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd sol = lu.solve(rhs);
  x.assign(sol.data(), sol.data() + d);
  return true;
}

// Vertices of {x : n.x <= b for all half-spaces} in R^2 or R^3.
std::vector<Vec> enumerate_vertices(const std::vector<HalfSpace>& hs, int d, double tol) {
  std::vector<Vec> out;
  const int m = static_cast<int>(hs.size());
  std::vector<int> pick(d);
  Vec x;
  auto feasible = [&](const Vec& p) {
    for (const HalfSpace& h : hs)
      if (dot(h.normal, p) > h.offset + tol) return false;
    return true;
  };
  auto record = [&]() {
    if (!solve_planes(hs, pick, x) || !feasible(x)) return;
    for (const Vec& q : out)
      if (dist(q, x) <= tol) return;
    out.push_back(x);
  };
  if (d == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        pick = {i, j};
        record();
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          pick = {i, j, k};
          record();
        }
  }
  return out;
}

ConvexBody body_from_points(int ambient, const std::vector<Vec>& pts) {
  if (pts.empty()) return ConvexBody::empty(ambient);
  if (ambient == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const Vec& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return ConvexBody::box({lo}, {hi});
  }
  if (ambient == 2) {
    std::vector<Vec2> v;
    for (const Vec& p : pts) v.push_back(to_vec2(p));
    return ConvexBody::polygon(v);
  }
  if (ambient == 3) {
    std::vector<Vec3> v;
    for (const Vec& p : pts) v.push_back(to_vec3(p));
    return ConvexBody::polytope(v);
  }
  throw UnsupportedShapeDimension("hull construction requires N <= 3");
}

double scale_of(std::span<const Vec> pts) {
  double s = 1.0;
  for (const Vec& p : pts)
    for (double x : p) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Empty: return "empty";
    case ShapeKind::Point: return "point";
    case ShapeKind::Segment: return "segment";
    case ShapeKind::Ball: return "ball";
    case ShapeKind::Box: return "box";
    case ShapeKind::Polygon: return "polygon";
    case ShapeKind::Polytope: return "polytope";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Construction

ConvexBody ConvexBody::empty(int ambient_dimension) {
  if (ambient_dimension < 1) throw InvalidArgument("ambient dimension must be positive");
  return ConvexBody(ambient_dimension, EmptyShape{});
}

ConvexBody ConvexBody::point(Vec coords) {
  if (coords.empty()) throw InvalidArgument("point needs at least one coordinate");
  check_finite(coords, "point");
  const int n = static_cast<int>(coords.size());
  return ConvexBody(n, PointShape{std::move(coords)});
}

ConvexBody ConvexBody::segment(Vec a, Vec b) {
  if (a.empty() || a.size() != b.size()) throw InvalidArgument("segment endpoints must share a dimension");
  check_finite(a, "segment");
  check_finite(b, "segment");
  if (a == b) return point(std::move(a));
  const int n = static_cast<int>(a.size());
  return ConvexBody(n, SegmentShape{std::move(a), std::move(b)});
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
  if (center.empty()) throw InvalidArgument("ball needs a center");
  check_finite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be finite and >= 0");
  if (radius == 0.0) return point(std::move(center));
  const int n = static_cast<int>(center.size());
  return ConvexBody(n, BallShape{std::move(center), radius});
}

ConvexBody ConvexBody::box(Vec lower, Vec upper) {
  if (lower.empty() || lower.size() != upper.size()) throw InvalidArgument("box corners must share a dimension");
  check_finite(lower, "box");
  check_finite(upper, "box");
  int nonzero = 0;
  std::size_t axis = 0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw InvalidArgument("box lower corner exceeds upper corner");
    if (upper[i] > lower[i]) {
      ++nonzero;
      axis = i;
    }
  }
  if (nonzero == 0) return point(std::move(lower));
  if (nonzero == 1) {
    Vec b = lower;
    b[axis] = upper[axis];
    return segment(std::move(lower), std::move(b));
  }
  const int n = static_cast<int>(lower.size());
  return ConvexBody(n, BoxShape{std::move(lower), std::move(upper)});
}

ConvexBody ConvexBody::polygon(std::span<const Vec2> vertices) {
  if (vertices.empty()) return empty(2);
  std::vector<Vec> pts;
  for (const Vec2& v : vertices) {
    check_finite(v, "polygon vertex");
    pts.push_back(to_vec(v));
  }
  const double tol = kRelTol * scale_of(pts);
  std::vector<Vec2> hull = convex_hull_2d(vertices, tol);
  if (hull.size() == 1) return point(to_vec(hull[0]));
  if (hull.size() == 2) return segment(to_vec(hull[0]), to_vec(hull[1]));
  return ConvexBody(2, PolygonShape{std::move(hull)});
}

ConvexBody ConvexBody::polytope(std::span<const Vec3> vertices) {
  if (vertices.empty()) return empty(3);
  std::vector<Vec> pts;
  for (const Vec3& v : vertices) {
    check_finite(v, "polytope vertex");
    pts.push_back(to_vec(v));
  }
  const double tol = kRelTol * scale_of(pts);
  Hull3 hull = convex_hull_3d(vertices, tol);
  if (hull.dimension == 0) return point(to_vec(hull.vertices[0]));
  if (hull.dimension == 1) return segment(to_vec(hull.vertices[0]), to_vec(hull.vertices[1]));
  PolytopeShape shape{std::move(hull.vertices), std::move(hull.faces), hull.dimension};
  return ConvexBody(3, std::move(shape));
}

int ConvexBody::dimension() const {
  return std::visit(overloaded{
                        [](const EmptyShape&) { return -1; },
                        [](const PointShape&) { return 0; },
                        [](const SegmentShape&) { return 1; },
                        [this](const BallShape&) { return ambient_; },
                        [](const BoxShape& b) {
                          int d = 0;
                          for (std::size_t i = 0; i < b.lower.size(); ++i)
                            if (b.upper[i] > b.lower[i]) ++d;
                          return d;
                        },
                        [](const PolygonShape&) { return 2; },
                        [](const PolytopeShape& p) { return p.dimension; },
                    },
                    shape_);
}

ShapeKind ConvexBody::kind() const { return static_cast<ShapeKind>(shape_.index()); }

std::string describe(const ConvexBody& body) {
  std::ostringstream os;
  os.precision(12);
  auto vec = [&](std::span<const double> v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
  };
  os << to_string(body.kind()) << "[N=" << body.ambient_dimension() << "]";
  std::visit(overloaded{
                 [](const EmptyShape&) {},
                 [&](const PointShape& p) { vec(p.coords); },
                 [&](const SegmentShape& s) {
                   vec(s.a);
                   vec(s.b);
                 },
                 [&](const BallShape& b) {
                   vec(b.center);
                   os << " r=" << b.radius;
                 },
                 [&](const BoxShape& b) {
                   vec(b.lower);
                   vec(b.upper);
                 },
                 [&](const PolygonShape& p) {
                   for (const Vec2& v : p.vertices) vec(v);
                 },
                 [&](const PolytopeShape& p) {
                   for (const Vec3& v : p.vertices) vec(v);
                 },
             },
             body.shape());
  return os.str();
}

// ---------------------------------------------------------------------------
// Intrinsic volumes

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

IntrinsicVolumeVector intrinsic_volumes(const ConvexBody& body) {
  const int n = body.ambient_dimension();
  std::vector<double> v(n + 1, 0.0);
  std::visit(overloaded{
                 [](const EmptyShape&) {},
                 [&](const PointShape&) { v[0] = 1.0; },
                 [&](const SegmentShape& s) {
                   v[0] = 1.0;
                   v[1] = dist(s.a, s.b);
                 },
                 [&](const BallShape& b) {
                   // V_j(B_r) = C(N,j) * omega_N / omega_{N-j} * r^j
                   for (int j = 0; j <= n; ++j)
                     v[j] = binomial(n, j) * unit_ball_volume(n) / unit_ball_volume(n - j) *
                            std::pow(b.radius, j);
                   v[0] = 1.0;
                 },
                 [&](const BoxShape& b) {
                   std::vector<double> sides(n);
                   for (int i = 0; i < n; ++i) sides[i] = b.upper[i] - b.lower[i];
                   v = elementary_symmetric(sides);
                 },
                 [&](const PolygonShape& p) {
                   v[0] = 1.0;
                   v[1] = 0.5 * polygon_perimeter(p.vertices);
                   v[2] = polygon_area(p.vertices);
                 },
                 [&](const PolytopeShape& p) {
                   v[0] = 1.0;
                   if (p.dimension == 2) {
                     v[1] = 0.5 * face_perimeter(p, p.faces[0]);
                     v[2] = std::abs(face_area(p, p.faces[0]));
                     return;
                   }
                   Vec3 c{0, 0, 0};
                   for (const Vec3& q : p.vertices)
                     for (int d = 0; d < 3; ++d) c[d] += q[d] / p.vertices.size();
                   double volume = 0.0, surface = 0.0;
                   std::map<std::pair<int, int>, std::vector<int>> edge_faces;
                   for (std::size_t fi = 0; fi < p.faces.size(); ++fi) {
                     const PolytopeFace& f = p.faces[fi];
                     double a = face_area(p, f);
                     surface += a;
                     volume += (f.offset - dot3(f.normal, c)) * a / 3.0;
                     for (std::size_t i = 0; i < f.loop.size(); ++i) {
                       int s = f.loop[i], t = f.loop[(i + 1) % f.loop.size()];
                       edge_faces[{std::min(s, t), std::max(s, t)}].push_back(static_cast<int>(fi));
                     }
                   }
                   // Mean width term: edge length times exterior dihedral angle.
                   double mean = 0.0;
                   for (const auto& [edge, faces] : edge_faces) {
                     if (faces.size() != 2) continue;
                     double cosang = std::clamp(dot3(p.faces[faces[0]].normal, p.faces[faces[1]].normal), -1.0, 1.0);
                     double length = len3(sub3(p.vertices[edge.first], p.vertices[edge.second]));
                     mean += length * std::acos(cosang);
                   }
                   v[1] = mean / (2.0 * std::numbers::pi);
                   v[2] = 0.5 * surface;
                   v[3] = volume;
                 },
             },
             body.shape());
  return IntrinsicVolumeVector{std::move(v)};
}

double intrinsic_volume(const ConvexBody& body, int k) {
  if (k < 0 || k > body.ambient_dimension()) throw InvalidArgument("intrinsic volume index out of range");
  // Closed forms avoid the full vector for the common top-degree case.
  if (body.kind() == ShapeKind::Ball) {
    const auto& b = body.as<BallShape>();
    const int n = body.ambient_dimension();
    if (k == 0) return 1.0;
    return binomial(n, k) * unit_ball_volume(n) / unit_ball_volume(n - k) * std::pow(b.radius, k);
  }
  return intrinsic_volumes(body)[k];
}

// ---------------------------------------------------------------------------
// Metric queries

double BoundingBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

BoundingBox bounding_box(const ConvexBody& body) {
  const int n = body.ambient_dimension();
  BoundingBox bb{Vec(n, INFINITY), Vec(n, -INFINITY)};
  auto grow = [&](std::span<const double> p) {
    for (int i = 0; i < n; ++i) {
      bb.lower[i] = std::min(bb.lower[i], p[i]);
      bb.upper[i] = std::max(bb.upper[i], p[i]);
    }
  };
  std::visit(overloaded{
                 [](const EmptyShape&) { throw InvalidArgument("empty body has no bounding box"); },
                 [&](const PointShape& p) { grow(p.coords); },
                 [&](const SegmentShape& s) {
                   grow(s.a);
                   grow(s.b);
                 },
                 [&](const BallShape& b) {
                   for (int i = 0; i < n; ++i) {
                     bb.lower[i] = b.center[i] - b.radius;
                     bb.upper[i] = b.center[i] + b.radius;
                   }
                 },
                 [&](const BoxShape& b) {
                   bb.lower = b.lower;
                   bb.upper = b.upper;
                 },
                 [&](const PolygonShape& p) {
                   for (const Vec2& v : p.vertices) grow(v);
                 },
                 [&](const PolytopeShape& p) {
                   for (const Vec3& v : p.vertices) grow(v);
                 },
             },
             body.shape());
  return bb;
}

double geometric_tolerance(const ConvexBody& body) {
  if (body.is_empty()) return kRelTol;
  BoundingBox bb = bounding_box(body);
  double s = 1.0;
  for (std::size_t i = 0; i < bb.lower.size(); ++i)
    s = std::max({s, std::abs(bb.lower[i]), std::abs(bb.upper[i])});
  return kRelTol * s;
}

double distance(const ConvexBody& body, std::span<const double> x) {
  if (static_cast<int>(x.size()) != body.ambient_dimension())
    throw InvalidArgument("query point has the wrong dimension");
  return std::visit(
      overloaded{
          [](const EmptyShape&) -> double { return INFINITY; },
          [&](const PointShape& p) { return dist(p.coords, x); },
          [&](const SegmentShape& s) { return segment_point_distance(s.a, s.b, x); },
          [&](const BallShape& b) { return std::max(0.0, dist(b.center, x) - b.radius); },
          [&](const BoxShape& b) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              double d = std::max({b.lower[i] - x[i], 0.0, x[i] - b.upper[i]});
              s += d * d;
            }
            return std::sqrt(s);
          },
          [&](const PolygonShape& p) {
            const auto& v = p.vertices;
            bool inside = true;
            double best = INFINITY;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Vec2& a = v[i];
              const Vec2& b = v[(i + 1) % v.size()];
              double c = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
              if (c < 0) inside = false;
              best = std::min(best, segment_point_distance(a, b, x));
            }
            return inside ? 0.0 : best;
          },
          [&](const PolytopeShape& p) {
            Vec3 q = to_vec3(x);
            if (p.dimension == 3) {
              bool inside = true;
              for (const PolytopeFace& f : p.faces)
                if (dot3(f.normal, q) > f.offset) inside = false;
              if (inside) return 0.0;
            }
            double best = INFINITY;
            for (const PolytopeFace& f : p.faces) {
              const Vec3& o = p.vertices[f.loop[0]];
              for (std::size_t i = 1; i + 1 < f.loop.size(); ++i)
                best = std::min(best, triangle_point_distance(o, p.vertices[f.loop[i]],
                                                              p.vertices[f.loop[i + 1]], q));
            }
            return best;
          },
      },
      body.shape());
}

bool contains_point(const ConvexBody& body, std::span<const double> x, double tol) {
  return distance(body, x) <= tol;
}

std::vector<Vec> vertices(const ConvexBody& body) {
  return std::visit(overloaded{
                        [](const EmptyShape&) { return std::vector<Vec>{}; },
                        [](const PointShape& p) { return std::vector<Vec>{p.coords}; },
                        [](const SegmentShape& s) { return std::vector<Vec>{s.a, s.b}; },
                        [](const BallShape&) -> std::vector<Vec> {
                          throw UnsupportedRepresentation("a ball has no vertex description");
                        },
                        [](const BoxShape& b) { return box_corners(b); },
                        [](const PolygonShape& p) {
                          std::vector<Vec> out;
                          for (const Vec2& v : p.vertices) out.push_back(to_vec(v));
                          return out;
                        },
                        [](const PolytopeShape& p) {
                          std::vector<Vec> out;
                          for (const Vec3& v : p.vertices) out.push_back(to_vec(v));
                          return out;
                        },
                    },
                    body.shape());
}

std::vector<HalfSpace> halfspaces(const ConvexBody& body) {
  const int n = body.ambient_dimension();
  std::vector<HalfSpace> hs;
  std::visit(overloaded{
                 [&](const BoxShape& b) {
                   for (int i = 0; i < n; ++i) {
                     Vec e(n, 0.0);
                     e[i] = 1.0;
                     hs.push_back({e, b.upper[i]});
                     e[i] = -1.0;
                     hs.push_back({e, -b.lower[i]});
                   }
                 },
                 [&](const PolygonShape& p) {
                   const auto& v = p.vertices;
                   for (std::size_t i = 0; i < v.size(); ++i) {
                     const Vec2& a = v[i];
                     const Vec2& b = v[(i + 1) % v.size()];
                     double dx = b[0] - a[0], dy = b[1] - a[1], l = std::hypot(dx, dy);
                     Vec nrm{dy / l, -dx / l};
                     hs.push_back({nrm, nrm[0] * a[0] + nrm[1] * a[1]});
                   }
                 },
                 [&](const PolytopeShape& p) {
                   for (const PolytopeFace& f : p.faces) hs.push_back({to_vec(f.normal), f.offset});
                   if (p.dimension == 2) {
                     const PolytopeFace& f = p.faces[0];
                     hs.push_back({Vec{-f.normal[0], -f.normal[1], -f.normal[2]}, -f.offset});
                     for (std::size_t i = 0; i < f.loop.size(); ++i) {
                       const Vec3& a = p.vertices[f.loop[i]];
                       const Vec3& b = p.vertices[f.loop[(i + 1) % f.loop.size()]];
                       Vec3 side = cross3(sub3(b, a), f.normal);
                       double l = len3(side);
                       side = {side[0] / l, side[1] / l, side[2] / l};
                       hs.push_back({to_vec(side), dot3(side, a)});
                     }
                   }
                 },
                 [&](const PointShape& p) {
                   for (int i = 0; i < n; ++i) {
                     Vec e(n, 0.0);
                     e[i] = 1.0;
                     hs.push_back({e, p.coords[i]});
                     e[i] = -1.0;
                     hs.push_back({e, -p.coords[i]});
                   }
                 },
                 [&](const auto&) {
                   throw UnsupportedRepresentation(std::string("no half-space description for ") +
                                                   to_string(body.kind()));
                 },
             },
             body.shape());
  return hs;
}

bool contains(const ConvexBody& outer, const ConvexBody& inner) {
  if (outer.ambient_dimension() != inner.ambient_dimension())
    throw InvalidArgument("containment test across dimensions");
  if (inner.is_empty()) return true;
  if (outer.is_empty()) return false;
  const double tol = std::max(geometric_tolerance(outer), geometric_tolerance(inner));

  if (inner.kind() == ShapeKind::Ball) {
    const auto& b = inner.as<BallShape>();
    switch (outer.kind()) {
      case ShapeKind::Ball: {
        const auto& o = outer.as<BallShape>();
        return dist(o.center, b.center) + b.radius <= o.radius + tol;
      }
      case ShapeKind::Box: {
        const auto& o = outer.as<BoxShape>();
        for (std::size_t i = 0; i < b.center.size(); ++i)
          if (b.center[i] - b.radius < o.lower[i] - tol || b.center[i] + b.radius > o.upper[i] + tol)
            return false;
        return true;
      }
      case ShapeKind::Polygon:
        for (const HalfSpace& h : halfspaces(outer))
          if (dot(h.normal, b.center) + b.radius > h.offset + tol) return false;
        return true;
      case ShapeKind::Polytope:
        if (outer.as<PolytopeShape>().dimension < 3) return false;
        for (const HalfSpace& h : halfspaces(outer))
          if (dot(h.normal, b.center) + b.radius > h.offset + tol) return false;
        return true;
      default:
        return false;
    }
  }

  if (inner.kind() == ShapeKind::Box) {
    const auto& b = inner.as<BoxShape>();
    if (outer.kind() == ShapeKind::Box) {
      const auto& o = outer.as<BoxShape>();
      for (std::size_t i = 0; i < b.lower.size(); ++i)
        if (b.lower[i] < o.lower[i] - tol || b.upper[i] > o.upper[i] + tol) return false;
      return true;
    }
    if (outer.kind() == ShapeKind::Ball) {
      const auto& o = outer.as<BallShape>();
      double s = 0.0;
      for (std::size_t i = 0; i < b.lower.size(); ++i) {
        double d = std::max(std::abs(b.lower[i] - o.center[i]), std::abs(b.upper[i] - o.center[i]));
        s += d * d;
      }
      return std::sqrt(s) <= o.radius + tol;
    }
  }

  for (const Vec& v : vertices(inner))
    if (!contains_point(outer, v, tol)) return false;
  return true;
}

bool same_set(const ConvexBody& a, const ConvexBody& b) { return contains(a, b) && contains(b, a); }

// ---------------------------------------------------------------------------
// Intersection and union

ConvexBody intersect(const ConvexBody& a, const ConvexBody& b) {
  const int n = a.ambient_dimension();
  if (n != b.ambient_dimension()) throw InvalidArgument("intersection across dimensions");
  if (a.is_empty()) return a;
  if (b.is_empty()) return b;
  if (contains(b, a)) return a;
  if (contains(a, b)) return b;
  // A point not contained in the other body is disjoint from it.
  if (a.kind() == ShapeKind::Point || b.kind() == ShapeKind::Point) return ConvexBody::empty(n);

  const double tol = std::max(geometric_tolerance(a), geometric_tolerance(b));

  if (n == 1) {
    auto [alo, ahi] = interval_of(a);
    auto [blo, bhi] = interval_of(b);
    double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
    if (lo > hi + tol) return ConvexBody::empty(1);
    return interval_body(lo, std::max(lo, hi));
  }

  if (a.kind() == ShapeKind::Ball || b.kind() == ShapeKind::Ball) {
    const ConvexBody& ball = a.kind() == ShapeKind::Ball ? a : b;
    const ConvexBody& other = a.kind() == ShapeKind::Ball ? b : a;
    const auto& bs = ball.as<BallShape>();
    double gap = distance(other, bs.center) - bs.radius;
    if (gap > tol) return ConvexBody::empty(n);
    if (other.kind() == ShapeKind::Ball) {
      const auto& os = other.as<BallShape>();
      if (std::abs(gap) <= tol) {
        // External tangency: the single contact point.
        double d = dist(bs.center, os.center);
        Vec p(n);
        for (int i = 0; i < n; ++i) p[i] = bs.center[i] + bs.radius * (os.center[i] - bs.center[i]) / d;
        return ConvexBody::point(std::move(p));
      }
      throw UnsupportedPair("overlapping balls that are not nested");
    }
    if (other.kind() == ShapeKind::Segment) {
      const auto& s = other.as<SegmentShape>();
      // |a + t (b - a) - c|^2 <= r^2
      double qa = 0, qb = 0, qc = -bs.radius * bs.radius;
      for (int i = 0; i < n; ++i) {
        double d = s.b[i] - s.a[i], e = s.a[i] - bs.center[i];
        qa += d * d;
        qb += 2 * d * e;
        qc += e * e;
      }
      double disc = qb * qb - 4 * qa * qc;
      if (disc < 0) return ConvexBody::empty(n);
      double t0 = std::max(0.0, (-qb - std::sqrt(disc)) / (2 * qa));
      double t1 = std::min(1.0, (-qb + std::sqrt(disc)) / (2 * qa));
      if (t0 > t1) return ConvexBody::empty(n);
      Vec p(n), q(n);
      for (int i = 0; i < n; ++i) {
        p[i] = s.a[i] + t0 * (s.b[i] - s.a[i]);
        q[i] = s.a[i] + t1 * (s.b[i] - s.a[i]);
      }
      return ConvexBody::segment(std::move(p), std::move(q));
    }
    throw UnsupportedPair(std::string("ball with ") + to_string(other.kind()));
  }

  if (a.kind() == ShapeKind::Box && b.kind() == ShapeKind::Box) {
    const auto& x = a.as<BoxShape>();
    const auto& y = b.as<BoxShape>();
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = std::max(x.lower[i], y.lower[i]);
      hi[i] = std::min(x.upper[i], y.upper[i]);
      if (lo[i] > hi[i] + tol) return ConvexBody::empty(n);
      hi[i] = std::max(hi[i], lo[i]);
    }
    return ConvexBody::box(std::move(lo), std::move(hi));
  }

  if (a.kind() == ShapeKind::Segment || b.kind() == ShapeKind::Segment) {
    const ConvexBody& seg = a.kind() == ShapeKind::Segment ? a : b;
    const ConvexBody& other = a.kind() == ShapeKind::Segment ? b : a;
    if (other.kind() == ShapeKind::Segment) throw UnsupportedPair("segment with segment");
    if (n > 3 && other.kind() != ShapeKind::Box) throw UnsupportedPair("segment clipping needs N <= 3");
    const auto& s = seg.as<SegmentShape>();
    // Liang-Barsky clipping of the parameter interval.
    double t0 = 0.0, t1 = 1.0;
    for (const HalfSpace& h : halfspaces(other)) {
      double num = h.offset - dot(h.normal, s.a);
      double den = 0.0;
      for (int i = 0; i < n; ++i) den += h.normal[i] * (s.b[i] - s.a[i]);
      if (std::abs(den) <= 1e-15) {
        if (num < -tol) return ConvexBody::empty(n);
        continue;
      }
      double t = num / den;
      if (den > 0) t1 = std::min(t1, t);
      else t0 = std::max(t0, t);
    }
    double len = dist(s.a, s.b);
    if (t0 > t1 + tol / len) return ConvexBody::empty(n);
    t1 = std::max(t0, t1);
    Vec p(n), q(n);
    for (int i = 0; i < n; ++i) {
      p[i] = s.a[i] + t0 * (s.b[i] - s.a[i]);
      q[i] = s.a[i] + t1 * (s.b[i] - s.a[i]);
    }
    return ConvexBody::segment(std::move(p), std::move(q));
  }

  if (n == 2) {
    // Sutherland-Hodgman clipping of a's boundary by b's edges.
    std::vector<Vec> subject = vertices(a);
    if (a.kind() == ShapeKind::Box) {
      const auto& bx = a.as<BoxShape>();
      subject = {{bx.lower[0], bx.lower[1]}, {bx.upper[0], bx.lower[1]},
                 {bx.upper[0], bx.upper[1]}, {bx.lower[0], bx.upper[1]}};
    }
    for (const HalfSpace& h : halfspaces(b)) {
      std::vector<Vec> next;
      for (std::size_t i = 0; i < subject.size(); ++i) {
        const Vec& p = subject[i];
        const Vec& q = subject[(i + 1) % subject.size()];
        double sp = dot(h.normal, p) - h.offset, sq = dot(h.normal, q) - h.offset;
        if (sp <= tol) next.push_back(p);
        if ((sp < -tol && sq > tol) || (sp > tol && sq < -tol)) {
          double t = sp / (sp - sq);
          next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
      }
      subject = std::move(next);
      if (subject.empty()) return ConvexBody::empty(2);
    }
    return body_from_points(2, subject);
  }

  if (n == 3) {
    std::vector<HalfSpace> hs = halfspaces(a);
    std::vector<HalfSpace> hb = halfspaces(b);
    hs.insert(hs.end(), hb.begin(), hb.end());
    return body_from_points(3, enumerate_vertices(hs, 3, tol));
  }

  throw UnsupportedPair(std::string(to_string(a.kind())) + " with " + to_string(b.kind()) +
                        " in N=" + std::to_string(n));
}

ConvexBody union_if_convex(const ConvexBody& a, const ConvexBody& b) {
  const int n = a.ambient_dimension();
  if (n != b.ambient_dimension()) throw InvalidArgument("union across dimensions");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (contains(a, b)) return a;
  if (contains(b, a)) return b;

  const ConvexBody common = intersect(a, b);
  if (common.is_empty())
    throw NotConvexUnion("disjoint bodies " + describe(a) + " and " + describe(b));

  ConvexBody hull = ConvexBody::empty(n);
  if (n == 1) {
    auto [alo, ahi] = interval_of(a);
    auto [blo, bhi] = interval_of(b);
    hull = interval_body(std::min(alo, blo), std::max(ahi, bhi));
  } else if (a.kind() == ShapeKind::Box && b.kind() == ShapeKind::Box) {
    BoundingBox x = bounding_box(a), y = bounding_box(b);
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(x.lower[i], y.lower[i]);
      hi[i] = std::max(x.upper[i], y.upper[i]);
    }
    hull = ConvexBody::box(std::move(lo), std::move(hi));
  } else if (is_polytopal(a) && is_polytopal(b) && n <= 3) {
    std::vector<Vec> pts = vertices(a);
    std::vector<Vec> more = vertices(b);
    pts.insert(pts.end(), more.begin(), more.end());
    hull = body_from_points(n, pts);
  } else {
    throw UnsupportedPair(std::string("hull of ") + to_string(a.kind()) + " and " + to_string(b.kind()));
  }

  // The union is convex iff it fills its hull: compare the top-dimensional
  // intrinsic volume of the hull with inclusion-exclusion.
  const int j = hull.dimension();
  const double whole = intrinsic_volume(hull, j);
  const double parts = intrinsic_volume(a, j) + intrinsic_volume(b, j) - intrinsic_volume(common, j);
  const double scale = std::max({std::abs(whole), std::abs(parts), 1e-300});
  if (std::abs(whole - parts) > kRelTol * scale)
    throw NotConvexUnion("union of " + describe(a) + " and " + describe(b) + " misses " +
                         std::to_string(whole - parts) + " of its hull");
  return hull;
}

ConvexBody scale(const ConvexBody& body, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("scale factor must be finite and >= 0");
  const int n = body.ambient_dimension();
  auto mul = [r](Vec v) {
    for (double& x : v) x *= r;
    return v;
  };
  if (r == 0.0) return body.is_empty() ? body : ConvexBody::point(Vec(n, 0.0));
  return std::visit(overloaded{
                        [&](const EmptyShape&) { return body; },
                        [&](const PointShape& p) { return ConvexBody::point(mul(p.coords)); },
                        [&](const SegmentShape& s) { return ConvexBody::segment(mul(s.a), mul(s.b)); },
                        [&](const BallShape& b) { return ConvexBody::ball(mul(b.center), r * b.radius); },
                        [&](const BoxShape& b) { return ConvexBody::box(mul(b.lower), mul(b.upper)); },
                        [&](const PolygonShape& p) {
                          std::vector<Vec2> v = p.vertices;
                          for (Vec2& q : v) q = {r * q[0], r * q[1]};
                          return ConvexBody::polygon(v);
                        },
                        [&](const PolytopeShape& p) {
                          std::vector<Vec3> v = p.vertices;
                          for (Vec3& q : v) q = {r * q[0], r * q[1], r * q[2]};
                          return ConvexBody::polytope(v);
                        },
                    },
                    body.shape());
}

// ---------------------------------------------------------------------------
// Rigid motions

RigidMotion RigidMotion::identity(int dimension) {
  if (dimension < 1) throw InvalidArgument("motion dimension must be positive");
  std::vector<double> rot(dimension * dimension, 0.0);
  for (int i = 0; i < dimension; ++i) rot[i * dimension + i] = 1.0;
  return RigidMotion(dimension, std::move(rot), Vec(dimension, 0.0));
}

RigidMotion RigidMotion::planar(double angle, Vec2 translation) {
  const double c = std::cos(angle), s = std::sin(angle);
  return RigidMotion(2, {c, -s, s, c}, {translation[0], translation[1]});
}

RigidMotion RigidMotion::from_matrix(int dimension, std::vector<double> rotation, Vec translation) {
  if (dimension < 1 || rotation.size() != static_cast<std::size_t>(dimension * dimension) ||
      translation.size() != static_cast<std::size_t>(dimension))
    throw InvalidArgument("rigid motion shape mismatch");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> r(
      rotation.data(), dimension, dimension);
  const Eigen::MatrixXd gram = r * r.transpose();
  if ((gram - Eigen::MatrixXd::Identity(dimension, dimension)).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("rotation is not orthonormal within 1e-12");
  if (r.determinant() <= 0.0) throw InvalidArgument("rotation must have determinant +1");
  check_finite(translation, "translation");
  return RigidMotion(dimension, std::move(rotation), std::move(translation));
}

Vec RigidMotion::apply(std::span<const double> x) const {
  Vec y(dim_);
  for (int i = 0; i < dim_; ++i) {
    double s = shift_[i];
    for (int j = 0; j < dim_; ++j) s += rot_[i * dim_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

RigidMotion RigidMotion::inverse() const {
  std::vector<double> rt(dim_ * dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) rt[i * dim_ + j] = rot_[j * dim_ + i];
  Vec shift(dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) shift[i] -= rt[i * dim_ + j] * shift_[j];
  return RigidMotion(dim_, std::move(rt), std::move(shift));
}

bool RigidMotion::is_identity() const {
  for (int i = 0; i < dim_; ++i) {
    if (shift_[i] != 0.0) return false;
    for (int j = 0; j < dim_; ++j)
      if (rot_[i * dim_ + j] != (i == j ? 1.0 : 0.0)) return false;
  }
  return true;
}

bool RigidMotion::is_axis_aligned() const {
  for (double x : rot_)
    if (x != 0.0 && x != 1.0 && x != -1.0) return false;
  return true;
}

ConvexBody apply_rigid_motion(const ConvexBody& body, const RigidMotion& motion) {
  const int n = body.ambient_dimension();
  if (motion.dimension() != n) throw InvalidArgument("motion and body dimensions differ");
  if (motion.is_identity()) return body;
  return std::visit(
      overloaded{
          [&](const EmptyShape&) { return body; },
          [&](const PointShape& p) { return ConvexBody::point(motion.apply(p.coords)); },
          [&](const SegmentShape& s) { return ConvexBody::segment(motion.apply(s.a), motion.apply(s.b)); },
          [&](const BallShape& b) { return ConvexBody::ball(motion.apply(b.center), b.radius); },
          [&](const BoxShape& b) {
            if (motion.is_axis_aligned()) {
              Vec p = motion.apply(b.lower), q = motion.apply(b.upper);
              Vec lo(n), hi(n);
              for (int i = 0; i < n; ++i) {
                lo[i] = std::min(p[i], q[i]);
                hi[i] = std::max(p[i], q[i]);
              }
              return ConvexBody::box(std::move(lo), std::move(hi));
            }
            if (n > 3) throw UnsupportedShapeDimension("rotated boxes are representable only for N <= 3");
            std::vector<Vec> pts;
            for (const Vec& c : box_corners(b)) pts.push_back(motion.apply(c));
            return body_from_points(n, pts);
          },
          [&](const PolygonShape& p) {
            std::vector<Vec2> v;
            for (const Vec2& q : p.vertices) v.push_back(to_vec2(motion.apply(q)));
            return ConvexBody::polygon(v);
          },
          [&](const PolytopeShape& p) {
            std::vector<Vec3> v;
            for (const Vec3& q : p.vertices) v.push_back(to_vec3(motion.apply(q)));
            return ConvexBody::polytope(v);
          },
      },
      body.shape());
}

}  // namespace qcval
