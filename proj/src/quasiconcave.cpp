#include "qcval/quasiconcave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcval/errors.hpp"

namespace qcval {

QCFunction with_rule(const QCFunction& f, QCFunction::Rule rule) { return QCFunction(f.dim_, std::move(rule)); }

namespace {

const SimpleFunction& require_simple(const QCFunction& f, SimpleFunction& scratch) {
  if (f.is_radial()) throw RequiresDiscretization("radial profiles must be dyadically discretized first");
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule())) return *s;
  scratch = f.as_simple();
  return scratch;
}

std::vector<double> merged_levels(const SimpleFunction& a, const SimpleFunction& b) {
  std::vector<double> grid = a.levels;
  grid.insert(grid.end(), b.levels.begin(), b.levels.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Level set of a simple function: K_i for t in (t_{i-1}, t_i].
ConvexBody simple_level(int dim, const SimpleFunction& s, double t) {
  auto it = std::lower_bound(s.levels.begin(), s.levels.end(), t);
  if (it == s.levels.end()) return ConvexBody::empty(dim);
  return s.bodies[it - s.levels.begin()];
}

}  // namespace

double RadialProfile::profile(double r) const {
  if (r > cutoff) return 0.0;
  if (kind == Kind::Gaussian) return height * std::exp(-(r / width) * (r / width));
  if (r >= radii.back()) return values.back();
  auto it = std::upper_bound(radii.begin(), radii.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - radii.begin()) - 1;
  const double u = (r - radii[j]) / (radii[j + 1] - radii[j]);
  return values[j] + u * (values[j + 1] - values[j]);
}

double RadialProfile::inverse(double t) const {
  if (kind == Kind::Gaussian) {
    if (t >= height) return 0.0;
    return std::min(cutoff, width * std::sqrt(std::log(height / t)));
  }
  if (t >= values.front()) return 0.0;
  if (t <= values.back()) return cutoff;
  // values are strictly decreasing; find w_j > t >= w_{j+1}.
  auto it = std::lower_bound(values.begin(), values.end(), t, std::greater<>());
  const std::size_t j = static_cast<std::size_t>(it - values.begin());
  if (values[j] == t) return std::min(cutoff, radii[j]);
  const std::size_t a = j - 1;
  const double u = (values[a] - t) / (values[a] - values[j]);
  return std::min(cutoff, radii[a] + u * (radii[j] - radii[a]));
}

QCFunction QCFunction::zero(int dimension) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  return QCFunction(dimension, SimpleFunction{});
}

QCFunction QCFunction::indicator(double s, ConvexBody body) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("indicator height must be positive");
  const int dim = body.ambient_dimension();
  if (body.is_empty()) return zero(dim);
  return QCFunction(dim, ScaledIndicator{s, std::move(body)});
}

QCFunction QCFunction::simple(std::vector<double> levels, std::vector<ConvexBody> bodies) {
  if (levels.size() != bodies.size()) throw InvalidArgument("simple function needs one body per level");
  if (levels.empty()) throw InvalidArgument("simple function needs at least one level; use zero()");
  const int dim = bodies.front().ambient_dimension();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || !std::isfinite(levels[i])) throw InvalidArgument("levels must be positive");
    if (i > 0 && !(levels[i] > levels[i - 1])) throw InvalidArgument("levels must be strictly increasing");
    if (bodies[i].ambient_dimension() != dim) throw InvalidArgument("bodies must share one dimension");
    if (bodies[i].is_empty()) throw InvalidArgument("simple function bodies must be non-empty");
    if (i > 0 && !contains(bodies[i - 1], bodies[i]))
      throw InvalidArgument("bodies must be nested: K_" + std::to_string(i) + " does not contain K_" +
                            std::to_string(i + 1));
  }
  return QCFunction(dim, SimpleFunction{std::move(levels), std::move(bodies)});
}

QCFunction QCFunction::radial(Vec center, std::span<const std::pair<double, double>> table) {
  if (center.empty()) throw InvalidArgument("radial profile needs a center");
  if (table.size() < 2) throw InvalidArgument("radial table needs at least two rows");
  if (table.front().first != 0.0) throw InvalidArgument("radial table must start at r = 0");
  RadialProfile p;
  p.kind = RadialProfile::Kind::Table;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto [r, w] = table[i];
    if (!std::isfinite(r) || !std::isfinite(w) || w < 0.0) throw InvalidArgument("radial table entries must be finite, w >= 0");
    if (i > 0 && !(r > p.radii.back())) throw InvalidArgument("radial table radii must be strictly increasing");
    if (i > 0 && !(w < p.values.back())) throw InvalidArgument("radial table values must be strictly decreasing");
    p.radii.push_back(r);
    p.values.push_back(w);
  }
  p.cutoff = p.radii.back();
  const int dim = static_cast<int>(center.size());
  p.center = std::move(center);
  return QCFunction(dim, std::move(p));
}

QCFunction QCFunction::cone(Vec center, double height, double radius) {
  if (!(height > 0.0) || !(radius > 0.0)) throw InvalidArgument("cone needs positive height and radius");
  const std::pair<double, double> table[] = {{0.0, height}, {radius, 0.0}};
  return radial(std::move(center), table);
}

QCFunction QCFunction::gaussian(Vec center, double height, double width) {
  if (center.empty()) throw InvalidArgument("radial profile needs a center");
  if (!(height > 0.0) || !(width > 0.0)) throw InvalidArgument("gaussian needs positive height and width");
  RadialProfile p;
  p.kind = RadialProfile::Kind::Gaussian;
  p.height = height;
  p.width = width;
  p.cutoff = INFINITY;
  const int dim = static_cast<int>(center.size());
  p.center = std::move(center);
  return QCFunction(dim, std::move(p));
}

SimpleFunction QCFunction::as_simple() const {
  if (const auto* s = std::get_if<SimpleFunction>(&rule_)) return *s;
  if (const auto* ind = std::get_if<ScaledIndicator>(&rule_)) return SimpleFunction{{ind->s}, {ind->body}};
  throw RequiresDiscretization("radial profile has no finite simple representation");
}

QCFunction canonical_simple(int dimension, std::vector<double> levels, std::vector<ConvexBody> bodies) {
  while (!levels.empty() && bodies.back().is_empty()) {
    levels.pop_back();
    bodies.pop_back();
  }
  std::vector<double> lv;
  std::vector<ConvexBody> bd;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (bodies[i].is_empty()) throw InvalidArgument("empty level set below a non-empty one");
    if (i + 1 < levels.size() && same_set(bodies[i], bodies[i + 1])) continue;
    lv.push_back(levels[i]);
    bd.push_back(std::move(bodies[i]));
  }
  if (lv.empty()) return QCFunction::zero(dimension);
  if (lv.size() == 1) return QCFunction(dimension, ScaledIndicator{lv[0], std::move(bd[0])});
  return QCFunction(dimension, SimpleFunction{std::move(lv), std::move(bd)});
}

ConvexBody level_set(const QCFunction& f, double t) {
  if (!(t > 0.0)) throw NonPositiveLevel("level sets are defined for t > 0, got " + std::to_string(t));
  const int dim = f.dimension();
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule()))
    return t <= ind->s ? ind->body : ConvexBody::empty(dim);
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule())) return simple_level(dim, *s, t);
  const auto& p = std::get<RadialProfile>(f.rule());
  const double top = p.kind == RadialProfile::Kind::Gaussian ? p.height : p.values.front();
  if (t > top) return ConvexBody::empty(dim);
  return ConvexBody::ball(p.center, p.inverse(t));
}

double max_value(const QCFunction& f) {
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule())) return ind->s;
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule())) return s->levels.empty() ? 0.0 : s->levels.back();
  const auto& p = std::get<RadialProfile>(f.rule());
  return p.kind == RadialProfile::Kind::Gaussian ? p.height : p.values.front();
}

ConvexBody support(const QCFunction& f) {
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule())) return ind->body;
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule()))
    return s->levels.empty() ? ConvexBody::empty(f.dimension()) : s->bodies.front();
  const auto& p = std::get<RadialProfile>(f.rule());
  if (!std::isfinite(p.cutoff)) throw UnboundedSupport("radial profile is positive everywhere; truncate it first");
  return ConvexBody::ball(p.center, p.cutoff);
}

QCFunction lattice_max(const QCFunction& f, const QCFunction& g) {
  if (f.dimension() != g.dimension()) throw InvalidArgument("lattice_max across dimensions");
  SimpleFunction sf, sg;
  const SimpleFunction& a = require_simple(f, sf);
  const SimpleFunction& b = require_simple(g, sg);
  const int dim = f.dimension();
  std::vector<double> grid = merged_levels(a, b);
  std::vector<ConvexBody> bodies;
  bodies.reserve(grid.size());
  for (double t : grid) {
    try {
      bodies.push_back(union_if_convex(simple_level(dim, a, t), simple_level(dim, b, t)));
    } catch (const NotConvexUnion& e) {
      throw NotConvexUnion("f v g leaves the class at level t=" + std::to_string(t) + " (" + e.what() + ")");
    }
  }
  return canonical_simple(dim, std::move(grid), std::move(bodies));
}

QCFunction lattice_min(const QCFunction& f, const QCFunction& g) {
  if (f.dimension() != g.dimension()) throw InvalidArgument("lattice_min across dimensions");
  SimpleFunction sf, sg;
  const SimpleFunction& a = require_simple(f, sf);
  const SimpleFunction& b = require_simple(g, sg);
  const int dim = f.dimension();
  std::vector<double> grid = merged_levels(a, b);
  std::vector<ConvexBody> bodies;
  bodies.reserve(grid.size());
  for (double t : grid) bodies.push_back(intersect(simple_level(dim, a, t), simple_level(dim, b, t)));
  return canonical_simple(dim, std::move(grid), std::move(bodies));
}

QCFunction dyadic_approximation(const QCFunction& f, int i) {
  if (i < 1 || i > 30) throw InvalidArgument("dyadic depth must lie in [1, 30]");
  const double top = max_value(f);
  if (!(top > 0.0)) return QCFunction::zero(f.dimension());
  const std::size_t count = std::size_t{1} << i;
  std::vector<double> levels(count);
  std::vector<ConvexBody> bodies;
  bodies.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) {
    levels[j - 1] = static_cast<double>(j) * top / static_cast<double>(count);
    bodies.push_back(level_set(f, levels[j - 1]));
  }
  return canonical_simple(f.dimension(), std::move(levels), std::move(bodies));
}

QCFunction compose_rigid_motion(const QCFunction& f, const RigidMotion& motion) {
  if (motion.dimension() != f.dimension()) throw InvalidArgument("motion and function dimensions differ");
  if (motion.is_identity()) return f;
  const RigidMotion back = motion.inverse();
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule()))
    return with_rule(f, ScaledIndicator{ind->s, apply_rigid_motion(ind->body, back)});
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule())) {
    SimpleFunction out{s->levels, {}};
    for (const ConvexBody& k : s->bodies) out.bodies.push_back(apply_rigid_motion(k, back));
    return with_rule(f, std::move(out));
  }
  RadialProfile p = std::get<RadialProfile>(f.rule());
  p.center = back.apply(p.center);
  return with_rule(f, std::move(p));
}

QCFunction scale_values(const QCFunction& f, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("value scale must be positive");
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule()))
    return with_rule(f, ScaledIndicator{c * ind->s, ind->body});
  if (const auto* s = std::get_if<SimpleFunction>(&f.rule())) {
    SimpleFunction out = *s;
    for (double& t : out.levels) t *= c;
    return with_rule(f, std::move(out));
  }
  RadialProfile p = std::get<RadialProfile>(f.rule());
  for (double& w : p.values) w *= c;
  p.height *= c;
  return with_rule(f, std::move(p));
}

QCFunction truncate(const QCFunction& f, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("truncation radius must be positive");
  if (!f.is_radial()) throw UnsupportedRepresentation("truncate applies to radial profiles; use lattice_min");
  RadialProfile p = std::get<RadialProfile>(f.rule());
  p.cutoff = std::min(p.cutoff, radius);
  return with_rule(f, std::move(p));
}

double evaluate(const QCFunction& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) throw InvalidArgument("evaluation point has the wrong dimension");
  if (const auto* p = std::get_if<RadialProfile>(&f.rule())) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - p->center[i]) * (x[i] - p->center[i]);
    return p->profile(std::sqrt(d));
  }
  const SimpleFunction s = f.as_simple();
  for (std::size_t i = s.levels.size(); i-- > 0;)
    if (contains_point(s.bodies[i], x, 0.0)) return s.levels[i];
  return 0.0;
}

bool same_function(const QCFunction& f, const QCFunction& g) {
  if (f.dimension() != g.dimension()) return false;
  if (f.is_radial() || g.is_radial()) {
    if (!f.is_radial() || !g.is_radial()) return false;
    const auto& a = std::get<RadialProfile>(f.rule());
    const auto& b = std::get<RadialProfile>(g.rule());
    return a.kind == b.kind && a.center == b.center && a.radii == b.radii && a.values == b.values &&
           a.height == b.height && a.width == b.width && a.cutoff == b.cutoff;
  }
  const SimpleFunction a = f.as_simple();
  const SimpleFunction b = g.as_simple();
  QCFunction ca = canonical_simple(f.dimension(), a.levels, a.bodies);
  QCFunction cb = canonical_simple(g.dimension(), b.levels, b.bodies);
  const SimpleFunction x = ca.as_simple(), y = cb.as_simple();
  if (x.levels.size() != y.levels.size()) return false;
  for (std::size_t i = 0; i < x.levels.size(); ++i) {
    if (std::abs(x.levels[i] - y.levels[i]) > 1e-12 * std::max(1.0, x.levels[i])) return false;
    if (!same_set(x.bodies[i], y.bodies[i])) return false;
  }
  return true;
}

}  // namespace qcval
