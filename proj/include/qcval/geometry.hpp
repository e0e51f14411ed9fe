#pragma once

// Convex bodies in R^N, their intrinsic volumes and the set operations the
// function lattice needs (intersection, convex union, rigid motions).
//
// Exact formulas cover every shape for N <= 3 and balls/boxes in any N.
// Polygon shapes live in R^2 and polytope shapes in R^3.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qcval {

using Vec = std::vector<double>;
using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

enum class ShapeKind { Empty, Point, Segment, Ball, Box, Polygon, Polytope };

const char* to_string(ShapeKind kind);

struct EmptyShape {
  bool operator==(const EmptyShape&) const = default;
};

struct PointShape {
  Vec coords;
  bool operator==(const PointShape&) const = default;
};

struct SegmentShape {
  Vec a;
  Vec b;
  bool operator==(const SegmentShape&) const = default;
};

struct BallShape {
  Vec center;
  double radius = 0.0;
  bool operator==(const BallShape&) const = default;
};

struct BoxShape {
  Vec lower;
  Vec upper;
  bool operator==(const BoxShape&) const = default;
};

/// Strictly convex polygon in R^2, counterclockwise, at least 3 vertices.
struct PolygonShape {
  std::vector<Vec2> vertices;
  bool operator==(const PolygonShape&) const = default;
};

/// A face of a 3-polytope: outward unit normal, plane offset (n.x = offset on
/// the face) and the vertex loop, counterclockwise seen from outside.
struct PolytopeFace {
  Vec3 normal{};
  double offset = 0.0;
  std::vector<int> loop;
  bool operator==(const PolytopeFace&) const = default;
};

/// Convex polytope in R^3 given by its extreme points. `dimension` is 3 for
/// solids and 2 for planar polygons embedded in R^3; planar polytopes carry a
/// single face whose normal spans the orthogonal complement of their plane.
struct PolytopeShape {
  std::vector<Vec3> vertices;
  std::vector<PolytopeFace> faces;
  int dimension = 3;
  bool operator==(const PolytopeShape&) const = default;
};

/// A compact convex set in R^N (or the empty set).
///
/// Factories normalize degenerate input: a zero-radius ball or a zero-length
/// segment becomes a Point, a box with a single nonzero side becomes a
/// Segment, and hull-based shapes collapse to the shape of their affine hull.
class ConvexBody {
 public:
  using Shape = std::variant<EmptyShape, PointShape, SegmentShape, BallShape,
                             BoxShape, PolygonShape, PolytopeShape>;

  static ConvexBody empty(int ambient_dimension);
  static ConvexBody point(Vec coords);
  static ConvexBody segment(Vec a, Vec b);
  static ConvexBody ball(Vec center, double radius);
  static ConvexBody box(Vec lower, Vec upper);
  static ConvexBody polygon(std::span<const Vec2> vertices);
  static ConvexBody polytope(std::span<const Vec3> vertices);

  int ambient_dimension() const { return ambient_; }
  /// Dimension of the affine hull; -1 for the empty set.
  int dimension() const;
  ShapeKind kind() const;
  bool is_empty() const { return kind() == ShapeKind::Empty; }
  const Shape& shape() const { return shape_; }

  template <class T>
  const T& as() const {
    return std::get<T>(shape_);
  }

  bool operator==(const ConvexBody&) const = default;

 private:
  ConvexBody(int ambient, Shape shape) : ambient_(ambient), shape_(std::move(shape)) {}

  int ambient_ = 0;
  Shape shape_;
};

std::string describe(const ConvexBody& body);

/// V_0..V_N of a body; V_k has units length^k.
struct IntrinsicVolumeVector {
  std::vector<double> values;

  double operator[](std::size_t k) const { return values.at(k); }
  std::size_t size() const { return values.size(); }
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

IntrinsicVolumeVector intrinsic_volumes(const ConvexBody& body);

/// Single intrinsic volume V_k.
double intrinsic_volume(const ConvexBody& body, int k);

struct BoundingBox {
  Vec lower;
  Vec upper;
  double volume() const;
};

/// Axis-aligned bounding box; throws InvalidArgument for the empty body.
BoundingBox bounding_box(const ConvexBody& body);

/// Euclidean distance from x to the body (0 inside).
double distance(const ConvexBody& body, std::span<const double> x);

/// Absolute tolerance used for geometric predicates on this body.
double geometric_tolerance(const ConvexBody& body);

bool contains_point(const ConvexBody& body, std::span<const double> x, double tol);

/// True when inner is a subset of outer up to a scale-relative tolerance.
bool contains(const ConvexBody& outer, const ConvexBody& inner);

/// Same point set up to tolerance (mutual containment).
bool same_set(const ConvexBody& a, const ConvexBody& b);

/// Extreme points of polytopal bodies (point, segment, box, polygon,
/// polytope). Throws UnsupportedRepresentation for balls.
std::vector<Vec> vertices(const ConvexBody& body);

/// Half-space n.x <= offset.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;
};

/// Outer description of polytopal bodies (box, polygon, polytope). Planar
/// polytopes are described by a pair of opposite half-spaces plus side planes.
std::vector<HalfSpace> halfspaces(const ConvexBody& body);

/// Exact intersection for the supported pair table; throws UnsupportedPair
/// for pairs outside it.
ConvexBody intersect(const ConvexBody& a, const ConvexBody& b);

/// The union a u b if it is convex, certified by inclusion-exclusion of the
/// top-dimensional intrinsic volume of the hull. Throws NotConvexUnion.
ConvexBody union_if_convex(const ConvexBody& a, const ConvexBody& b);

/// Dilation x -> r x about the origin.
ConvexBody scale(const ConvexBody& body, double r);

/// Proper rigid motion x -> R x + b.
class RigidMotion {
 public:
  static RigidMotion identity(int dimension);
  /// Counterclockwise rotation by `angle` followed by a translation.
  static RigidMotion planar(double angle, Vec2 translation = {0.0, 0.0});
  /// Row-major rotation matrix; validated to be orthonormal with det +1.
  static RigidMotion from_matrix(int dimension, std::vector<double> rotation,
                                 Vec translation);

  int dimension() const { return dim_; }
  double rotation(int row, int col) const { return rot_[row * dim_ + col]; }
  const std::vector<double>& rotation_matrix() const { return rot_; }
  const Vec& translation() const { return shift_; }

  Vec apply(std::span<const double> x) const;
  RigidMotion inverse() const;
  bool is_identity() const;
  /// Rotation is a signed permutation with exact 0/+-1 entries.
  bool is_axis_aligned() const;

 private:
  RigidMotion(int dim, std::vector<double> rot, Vec shift)
      : dim_(dim), rot_(std::move(rot)), shift_(std::move(shift)) {}

  int dim_ = 0;
  std::vector<double> rot_;
  Vec shift_;
};

/// Image of a body under a motion. Boxes under non-axis-aligned rotations
/// become polygons (N = 2) or polytopes (N = 3).
ConvexBody apply_rigid_motion(const ConvexBody& body, const RigidMotion& motion);

}  // namespace qcval
