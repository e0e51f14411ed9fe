#include "qcval/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qcval/errors.hpp"
#include "qcval/level_measures.hpp"

namespace qcval {
namespace {

double positive_part(const ScalarFunction& phi, double t) { return std::max(0.0, phi(t)); }

}  // namespace

DivergenceWitness divergence_witness(int k, int dimension, const ScalarFunction& phi, double t_min,
                                     int points_per_decade) {
  if (k < 1 || k > dimension) throw InvalidArgument("witness index k must lie in [1, N]");
  if (!(t_min > 0.0) || !(t_min < 1.0)) throw InvalidArgument("t_min must lie in (0, 1)");
  if (points_per_decade < 2) throw InvalidArgument("need at least two points per decade");
  if (phi.positive_part_vanishes_near_zero())
    throw PhiVanishesNearZero("phi_+ vanishes near 0; the phi-form is finite and no witness exists");

  const int decades = static_cast<int>(std::ceil(-std::log10(t_min) - 1e-12));
  const int count = decades * points_per_decade;
  std::vector<double> levels(count + 1);
  for (int j = 0; j <= count; ++j)
    levels[j] = std::pow(10.0, -static_cast<double>(j) * std::log10(1.0 / t_min) / count);
  levels.back() = t_min;

  // h(t_{j+1}) = h(t_j) + int_{t_{j+1}}^{t_j} ds / psi(s), by Simpson in log s.
  std::vector<double> h(levels.size(), 0.0);
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    const double hi = levels[j], lo = levels[j + 1];
    const double ua = std::log(lo), ub = std::log(hi);
    constexpr int kPanels = 16;
    double sum = 0.0;
    for (int q = 0; q <= kPanels; ++q) {
      const double s = std::exp(ua + (ub - ua) * q / kPanels);
      const double psi = phi.positive_part_integral(s);
      if (!(psi > 0.0)) throw PhiVanishesNearZero("psi vanishes at t=" + std::to_string(s));
      const double w = (q == 0 || q == kPanels) ? 1.0 : (q % 2 ? 4.0 : 2.0);
      sum += w * s / psi;
    }
    h[j + 1] = h[j] + sum * (ub - ua) / (3.0 * kPanels);
  }

  // V_k(r B) = c r^k, so the level set at t is the ball of radius (h/c)^(1/k).
  const double c = intrinsic_volume(ConvexBody::ball(Vec(dimension, 0.0), 1.0), k);
  std::vector<std::pair<double, double>> table;
  table.reserve(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) table.emplace_back(std::pow(h[j] / c, 1.0 / k), levels[j]);

  DivergenceWitness out{QCFunction::radial(Vec(dimension, 0.0), table), k, t_min, std::move(levels), std::move(h)};
  return out;
}

DivergenceTrace divergence_trace(const DivergenceWitness& witness, const ScalarFunction& phi, int max_depth,
                                 double threshold) {
  if (max_depth < 1 || max_depth > 30) throw InvalidArgument("trace depth must lie in [1, 30]");
  DivergenceTrace tr;
  tr.threshold = threshold;
  for (int i = 1; i <= max_depth; ++i) {
    const LevelMeasure m = sk_measure(witness.function, witness.k, i);
    double s = 0.0;
    for (const Atom& a : m.atomic_part().atoms) s += a.mass * positive_part(phi, a.location);
    tr.depths.push_back(i);
    tr.partial_integrals.push_back(s);
    if (s > threshold) tr.threshold_exceeded = true;
  }
  const std::size_t n = tr.partial_integrals.size();
  if (n >= 4) {
    double floor = INFINITY, peak = 0.0;
    for (std::size_t j = n / 2; j < n; ++j) {
      const double inc = tr.partial_integrals[j] - tr.partial_integrals[j - 1];
      floor = std::min(floor, inc);
      peak = std::max(peak, inc);
    }
    tr.min_trailing_increment = floor;
    // Convergent traces have geometrically shrinking increments.
    tr.sustained_growth = floor > 0.0 && floor >= 0.5 * peak;
  }
  return tr;
}

}  // namespace qcval
