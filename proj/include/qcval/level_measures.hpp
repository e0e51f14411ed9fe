#pragma once

// The profile t -> V_k(L_t(f)) and the measure S_k(f; .) = -d/dt of it.

#include <span>
#include <variant>
#include <vector>

#include "qcval/quasiconcave.hpp"
#include "qcval/scalar_function.hpp"

namespace qcval {

struct ProfileTable {
  int k = 0;
  std::vector<double> knots;
  std::vector<double> values;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Nonnegative measure on (0, inf): point masses, or a piecewise-constant
/// density where densities[j] applies on [knots[j], knots[j+1]) and the last
/// density on [knots.back(), inf). Nothing is ever placed at t = 0.
class LevelMeasure {
 public:
  struct Atomic {
    std::vector<Atom> atoms;
  };
  struct GridDensity {
    std::vector<double> knots;
    std::vector<double> densities;
  };

  static LevelMeasure zero();
  /// Locations strictly increasing and positive, masses >= 0.
  static LevelMeasure atomic(std::vector<Atom> atoms);
  static LevelMeasure dirac(double location, double mass = 1.0);
  static LevelMeasure density(std::vector<double> knots, std::vector<double> densities);
  /// Constant density on [a, b].
  static LevelMeasure uniform(double a, double b, double density = 1.0);

  bool is_atomic_representation() const { return std::holds_alternative<Atomic>(rep_); }
  /// True when some point carries positive mass.
  bool has_atoms() const;
  const Atomic& atomic_part() const { return std::get<Atomic>(rep_); }
  const GridDensity& density_part() const { return std::get<GridDensity>(rep_); }

  /// nu([0, t]).
  double cumulative(double t) const;
  /// nu((a, b]).
  double mass_between(double a, double b) const { return cumulative(b) - cumulative(a); }
  /// Total mass; +inf for a nonzero density tail.
  double total_mass() const;
  bool has_unbounded_tail() const;
  bool is_zero() const;

 private:
  using Rep = std::variant<Atomic, GridDensity>;
  explicit LevelMeasure(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// V_k(L_t(f)) at each grid point.
ProfileTable profile(const QCFunction& f, int k, std::span<const double> grid);

/// S_k(f; .). Exact atoms for simple functions; radial profiles use the
/// dyadic approximation of depth `refinement`.
LevelMeasure sk_measure(const QCFunction& f, int k, int refinement = 12);

/// Integral of phi against the measure (midpoint rule on density cells).
double integrate_against(const ScalarFunction& phi, const LevelMeasure& m);

}  // namespace qcval
