#include "qcval/level_measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcval/errors.hpp"

namespace qcval {

LevelMeasure LevelMeasure::zero() { return LevelMeasure(Atomic{}); }

LevelMeasure LevelMeasure::atomic(std::vector<Atom> atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].location > 0.0) || !std::isfinite(atoms[i].location))
      throw InvalidArgument("atom locations must be positive");
    if (!(atoms[i].mass >= 0.0) || !std::isfinite(atoms[i].mass)) throw InvalidArgument("atom masses must be >= 0");
    if (i > 0 && !(atoms[i].location > atoms[i - 1].location))
      throw InvalidArgument("atom locations must increase strictly");
  }
  return LevelMeasure(Atomic{std::move(atoms)});
}

LevelMeasure LevelMeasure::dirac(double location, double mass) { return atomic({{location, mass}}); }

LevelMeasure LevelMeasure::density(std::vector<double> knots, std::vector<double> densities) {
  if (knots.empty() || knots.size() != densities.size())
    throw InvalidArgument("density needs one value per knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] >= 0.0) || !std::isfinite(knots[i])) throw InvalidArgument("density knots must be >= 0");
    if (i > 0 && !(knots[i] > knots[i - 1])) throw InvalidArgument("density knots must increase strictly");
    if (!(densities[i] >= 0.0) || !std::isfinite(densities[i])) throw InvalidArgument("densities must be >= 0");
  }
  return LevelMeasure(GridDensity{std::move(knots), std::move(densities)});
}

LevelMeasure LevelMeasure::uniform(double a, double b, double density) {
  if (!(b > a)) throw InvalidArgument("uniform density needs a < b");
  return LevelMeasure::density({a, b}, {density, 0.0});
}

bool LevelMeasure::has_atoms() const {
  if (const auto* a = std::get_if<Atomic>(&rep_))
    return std::any_of(a->atoms.begin(), a->atoms.end(), [](const Atom& x) { return x.mass > 0.0; });
  return false;
}

double LevelMeasure::cumulative(double t) const {
  if (const auto* a = std::get_if<Atomic>(&rep_)) {
    double s = 0.0;
    for (const Atom& x : a->atoms) {
      if (x.location > t) break;
      s += x.mass;
    }
    return s;
  }
  const auto& g = std::get<GridDensity>(rep_);
  double s = 0.0;
  for (std::size_t j = 0; j < g.knots.size() && g.knots[j] < t; ++j) {
    const double hi = j + 1 < g.knots.size() ? std::min(t, g.knots[j + 1]) : t;
    s += g.densities[j] * (hi - g.knots[j]);
  }
  return s;
}

bool LevelMeasure::has_unbounded_tail() const {
  if (const auto* g = std::get_if<GridDensity>(&rep_)) return g->densities.back() > 0.0;
  return false;
}

double LevelMeasure::total_mass() const {
  if (has_unbounded_tail()) return INFINITY;
  if (const auto* a = std::get_if<Atomic>(&rep_)) return cumulative(a->atoms.empty() ? 0.0 : a->atoms.back().location);
  return cumulative(std::get<GridDensity>(rep_).knots.back());
}

bool LevelMeasure::is_zero() const { return total_mass() == 0.0; }

ProfileTable profile(const QCFunction& f, int k, std::span<const double> grid) {
  if (k < 0 || k > f.dimension()) throw InvalidArgument("profile index k out of range");
  ProfileTable table;
  table.k = k;
  table.knots.assign(grid.begin(), grid.end());
  table.values.reserve(grid.size());
  for (double t : grid) table.values.push_back(intrinsic_volume(level_set(f, t), k));
  return table;
}

LevelMeasure sk_measure(const QCFunction& f, int k, int refinement) {
  if (k < 0 || k > f.dimension()) throw InvalidArgument("measure index k out of range");
  const double top = max_value(f);
  if (!(top > 0.0)) return LevelMeasure::zero();
  // V_0 of a non-empty body is 1, so S_0 is the Dirac mass at M(f).
  if (k == 0) return LevelMeasure::dirac(top, 1.0);

  SimpleFunction s;
  if (f.is_radial()) {
    if (refinement < 1) throw InvalidArgument("refinement must be >= 1");
    s = dyadic_approximation(f, refinement).as_simple();
  } else {
    s = f.as_simple();
  }
  std::vector<Atom> atoms;
  const std::size_t m = s.levels.size();
  double upper = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    const double v = intrinsic_volume(s.bodies[i], k);
    // Nested bodies make the difference nonnegative up to rounding.
    const double mass = std::max(0.0, v - upper);
    upper = v;
    if (mass > 0.0) atoms.push_back({s.levels[i], mass});
  }
  std::reverse(atoms.begin(), atoms.end());
  return LevelMeasure::atomic(std::move(atoms));
}

double integrate_against(const ScalarFunction& phi, const LevelMeasure& m) {
  if (m.is_atomic_representation()) {
    double s = 0.0;
    for (const Atom& a : m.atomic_part().atoms) s += a.mass * phi(a.location);
    return s;
  }
  if (m.has_unbounded_tail()) throw NonFinite("measure has infinite mass");
  const auto& g = m.density_part();
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < g.knots.size(); ++j) {
    if (g.densities[j] == 0.0) continue;
    const double a = g.knots[j], b = g.knots[j + 1];
    s += g.densities[j] * (b - a) * phi(0.5 * (a + b));
  }
  return s;
}

}  // namespace qcval
