#pragma once

// Quasi-concave functions represented by their super-level sets
// L_t(f) = {f >= t}, each a convex body or empty.

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qcval/geometry.hpp"

namespace qcval {

/// s * I_K.
struct ScaledIndicator {
  double s = 0.0;
  ConvexBody body = ConvexBody::empty(1);
};

/// t_1 I_{K_1} v ... v t_m I_{K_m} with 0 < t_1 < ... < t_m and
/// K_1 >= ... >= K_m. No levels means the zero function.
struct SimpleFunction {
  std::vector<double> levels;
  std::vector<ConvexBody> bodies;
};

/// f(x) = w(|x - c|) for |x - c| <= cutoff and 0 beyond, with w strictly
/// decreasing. w is a piecewise-linear table starting at r = 0, or the
/// closed form height * exp(-(r / width)^2).
struct RadialProfile {
  enum class Kind { Table, Gaussian };

  Kind kind = Kind::Table;
  Vec center;
  std::vector<double> radii;   // Table: 0 = r_0 < r_1 < ...
  std::vector<double> values;  // Table: w(r_0) > w(r_1) > ... >= 0
  double height = 0.0;         // Gaussian
  double width = 0.0;          // Gaussian
  double cutoff = 0.0;         // support radius, may be +inf

  /// w(r) for r <= cutoff.
  double profile(double r) const;
  /// Radius of L_t for 0 < t <= w(0).
  double inverse(double t) const;
};

class QCFunction {
 public:
  using Rule = std::variant<ScaledIndicator, SimpleFunction, RadialProfile>;

  static QCFunction zero(int dimension);
  static QCFunction indicator(double s, ConvexBody body);
  /// Validates strictly increasing positive levels and nested bodies.
  static QCFunction simple(std::vector<double> levels, std::vector<ConvexBody> bodies);
  /// Table of (r, w(r)) pairs; the first radius must be 0. The support ends at
  /// the last radius.
  static QCFunction radial(Vec center, std::span<const std::pair<double, double>> table);
  /// h * max(0, 1 - |x - c| / R).
  static QCFunction cone(Vec center, double height, double radius);
  /// h * exp(-|x - c|^2 / width^2), unbounded support.
  static QCFunction gaussian(Vec center, double height, double width);

  int dimension() const { return dim_; }
  const Rule& rule() const { return rule_; }
  bool is_radial() const { return std::holds_alternative<RadialProfile>(rule_); }
  /// Indicator or simple function.
  bool is_simple() const { return !is_radial(); }

  /// Simple-function view of indicators and simple functions.
  SimpleFunction as_simple() const;

 private:
  QCFunction(int dim, Rule rule) : dim_(dim), rule_(std::move(rule)) {}
  friend QCFunction canonical_simple(int, std::vector<double>, std::vector<ConvexBody>);
  friend QCFunction with_rule(const QCFunction&, Rule);

  int dim_ = 1;
  Rule rule_;
};

/// Builds the canonical representative: empty top levels dropped, redundant
/// levels (equal consecutive bodies) merged, single level as an indicator.
QCFunction canonical_simple(int dimension, std::vector<double> levels, std::vector<ConvexBody> bodies);

/// L_t(f); throws NonPositiveLevel for t <= 0.
ConvexBody level_set(const QCFunction& f, double t);

/// M(f) = max f.
double max_value(const QCFunction& f);

/// Closure of {f > 0}; throws UnboundedSupport for untruncated profiles.
ConvexBody support(const QCFunction& f);

/// f v g on the merged level grid. Throws NotConvexUnion when some level
/// union leaves the class, RequiresDiscretization for radial input.
QCFunction lattice_max(const QCFunction& f, const QCFunction& g);

/// f ^ g on the merged level grid.
QCFunction lattice_min(const QCFunction& f, const QCFunction& g);

/// max_j t_j I_{L_{t_j}(f)} with t_j = j M(f) / 2^i.
QCFunction dyadic_approximation(const QCFunction& f, int i);

/// f o T, whose level sets are T^{-1}(L_t(f)).
QCFunction compose_rigid_motion(const QCFunction& f, const RigidMotion& motion);

/// c * f for c > 0 (levels scaled, level sets unchanged).
QCFunction scale_values(const QCFunction& f, double c);

/// Radial profile cut to the ball of the given radius, i.e. f ^ M(f) I_{B_R}.
QCFunction truncate(const QCFunction& f, double radius);

/// Pointwise value. Simple functions take sup{t_i : x in K_i}; radial
/// profiles evaluate w exactly.
double evaluate(const QCFunction& f, std::span<const double> x);

/// Level-set-wise equality of simple functions (up to geometric tolerance);
/// radial profiles compare structurally.
bool same_function(const QCFunction& f, const QCFunction& g);

}  // namespace qcval
