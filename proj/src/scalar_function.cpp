#include "qcval/scalar_function.hpp"

#include <algorithm>
#include <cmath>

#include "qcval/errors.hpp"

namespace qcval {
namespace {

// Integral of max(0, l(s)) over [a, b] for l linear with l(a)=u, l(b)=v.
double positive_linear_integral(double a, double b, double u, double v) {
  const double h = b - a;
  if (u >= 0 && v >= 0) return 0.5 * h * (u + v);
  if (u <= 0 && v <= 0) return 0.0;
  // One sign change: triangle on the positive side.
  const double pos = u > 0 ? u : v;
  const double frac = pos / (std::abs(u) + std::abs(v));
  return 0.5 * h * frac * pos;
}

}  // namespace

ScalarFunction ScalarFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw InvalidArgument("scalar table needs at least one knot");
  if (points.front().first != 0.0) throw InvalidArgument("scalar table must start at t = 0");
  ScalarFunction f;
  f.kind_ = Kind::Table;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [t, v] = points[i];
    if (!std::isfinite(t) || !std::isfinite(v)) throw InvalidArgument("scalar table entries must be finite");
    if (i > 0 && !(t > f.knots_.back())) throw InvalidArgument("scalar table knots must increase strictly");
    f.knots_.push_back(t);
    f.values_.push_back(v);
  }
  return f;
}

ScalarFunction ScalarFunction::power(double p, double scale) {
  if (!(p > 0.0) || !std::isfinite(scale)) throw InvalidArgument("power needs p > 0 and a finite scale");
  ScalarFunction f;
  f.kind_ = Kind::Power;
  f.p_ = p;
  f.a_ = scale;
  return f;
}

ScalarFunction ScalarFunction::truncated_linear(double delta, double slope) {
  if (!(delta >= 0.0) || !std::isfinite(slope)) throw InvalidArgument("truncated linear needs delta >= 0");
  ScalarFunction f;
  f.kind_ = Kind::TruncatedLinear;
  f.delta_ = delta;
  f.a_ = slope;
  return f;
}

ScalarFunction ScalarFunction::constant(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("constant must be finite");
  ScalarFunction f;
  f.kind_ = Kind::Constant;
  f.a_ = c;
  return f;
}

double ScalarFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Power:
      return t <= 0.0 ? 0.0 : a_ * std::pow(t, p_);
    case Kind::TruncatedLinear:
      return a_ * std::max(0.0, t - delta_);
    case Kind::Table: {
      if (t <= knots_.front()) return values_.front();
      if (t >= knots_.back()) return values_.back();
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      const std::size_t j = static_cast<std::size_t>(it - knots_.begin()) - 1;
      const double u = (t - knots_[j]) / (knots_[j + 1] - knots_[j]);
      return values_[j] + u * (values_[j + 1] - values_[j]);
    }
  }
  return 0.0;
}

bool ScalarFunction::is_zero() const {
  switch (kind_) {
    case Kind::Table:
      return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
    default:
      return a_ == 0.0;
  }
}

bool ScalarFunction::vanishes_on(double delta) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Power:
      return a_ == 0.0;
    case Kind::TruncatedLinear:
      return a_ == 0.0 || delta_ >= delta;
    case Kind::Table:
      for (std::size_t i = 0; i < knots_.size() && knots_[i] <= delta; ++i)
        if (values_[i] != 0.0) return false;
      return (*this)(delta) == 0.0;
  }
  return false;
}

bool ScalarFunction::positive_part_vanishes_near_zero() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Power:
      return a_ <= 0.0;
    case Kind::TruncatedLinear:
      return a_ <= 0.0 || delta_ > 0.0;
    case Kind::Table:
      if (values_[0] != 0.0) return values_[0] < 0.0;
      return values_.size() < 2 || values_[1] <= 0.0;
  }
  return false;
}

bool ScalarFunction::negative_part_vanishes_near_zero() const { return negated().positive_part_vanishes_near_zero(); }

bool ScalarFunction::is_nondecreasing() const {
  switch (kind_) {
    case Kind::Constant:
      return true;
    case Kind::Power:
    case Kind::TruncatedLinear:
      return a_ >= 0.0;
    case Kind::Table:
      for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1]) return false;
      return true;
  }
  return false;
}

double ScalarFunction::positive_part_integral(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::Constant:
      return std::max(0.0, a_) * t;
    case Kind::Power:
      return a_ > 0.0 ? a_ * std::pow(t, p_ + 1.0) / (p_ + 1.0) : 0.0;
    case Kind::TruncatedLinear:
      return a_ > 0.0 && t > delta_ ? 0.5 * a_ * (t - delta_) * (t - delta_) : 0.0;
    case Kind::Table: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < knots_.size() && knots_[i] < t; ++i) {
        const double b = std::min(t, knots_[i + 1]);
        s += positive_linear_integral(knots_[i], b, values_[i], (*this)(b));
      }
      if (t > knots_.back()) s += std::max(0.0, values_.back()) * (t - knots_.back());
      return s;
    }
  }
  return 0.0;
}

ScalarFunction ScalarFunction::negated() const {
  ScalarFunction f = *this;
  f.a_ = -a_;
  for (double& v : f.values_) v = -v;
  return f;
}

}  // namespace qcval
