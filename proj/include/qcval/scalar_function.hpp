#pragma once

#include <utility>
#include <vector>

namespace qcval {

/// Continuous real function on [0, inf): a piecewise-linear table (held
/// constant past its last knot) or one of a few closed forms.
class ScalarFunction {
 public:
  enum class Kind { Table, Power, TruncatedLinear, Constant };

  /// Knots must start at t = 0 and increase strictly.
  static ScalarFunction table(std::vector<std::pair<double, double>> points);
  /// scale * t^p, p > 0.
  static ScalarFunction power(double p, double scale = 1.0);
  /// slope * max(0, t - delta).
  static ScalarFunction truncated_linear(double delta, double slope = 1.0);
  static ScalarFunction constant(double c);
  static ScalarFunction zero() { return constant(0.0); }

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::Table; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double exponent() const { return p_; }
  double coefficient() const { return a_; }
  double cutoff() const { return delta_; }

  bool is_zero() const;
  /// phi == 0 on [0, delta].
  bool vanishes_on(double delta) const;
  /// phi_+ == 0 on some [0, d] with d > 0.
  bool positive_part_vanishes_near_zero() const;
  /// phi_- == 0 on some [0, d] with d > 0.
  bool negative_part_vanishes_near_zero() const;
  bool is_nondecreasing() const;
  /// Integral of phi_+ over [0, t].
  double positive_part_integral(double t) const;

  /// Negated function (tables and closed forms alike).
  ScalarFunction negated() const;

 private:
  ScalarFunction() = default;

  Kind kind_ = Kind::Constant;
  std::vector<double> knots_;
  std::vector<double> values_;
  double p_ = 0.0;
  double a_ = 0.0;
  double delta_ = 0.0;
};

}  // namespace qcval
