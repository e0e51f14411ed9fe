#include "qcval/valuations.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qcval/errors.hpp"

namespace qcval {
namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// V_k of a ball of radius r in R^n.
double ball_intrinsic_volume(int n, int k, double r) {
  if (k == 0) return 1.0;
  return binomial(n, k) * unit_ball_volume(n) / unit_ball_volume(n - k) * std::pow(r, k);
}

void check_index(int k, const QCFunction& f) {
  if (k < 0 || k > f.dimension())
    throw InvalidArgument("component index k=" + std::to_string(k) + " outside [0, " + std::to_string(f.dimension()) +
                          "]");
}

// Integral of d * u over [a, b) where u is the step profile of a simple
// function: u = v[i] on (levels[i-1], levels[i]].
double step_integral(const std::vector<double>& levels, const std::vector<double>& v, double a, double b) {
  double s = 0.0, lo = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double hi = levels[i];
    const double l = std::max(lo, a), r = std::min(hi, b);
    if (r > l) s += v[i] * (r - l);
    lo = hi;
    if (lo >= b) break;
  }
  return s;
}

struct RadialIntegrand {
  const RadialProfile* p;
  int n;
  int k;
  double top;
  double operator()(double t) const { return t > top ? 0.0 : ball_intrinsic_volume(n, k, p->inverse(t)); }
};

double midpoint(const RadialIntegrand& u, double a, double b, std::size_t cells) {
  const double h = (b - a) / static_cast<double>(cells);
  double s = 0.0;
  for (std::size_t j = 0; j < cells; ++j) s += u(a + (static_cast<double>(j) + 0.5) * h);
  return s * h;
}

double refined_integral(const RadialIntegrand& u, double a, double b, const NuEvaluationOptions& opt) {
  std::size_t n = 8;
  double prev = midpoint(u, a, b, n);
  while (2 * n <= opt.max_knots) {
    n *= 2;
    const double cur = midpoint(u, a, b, n);
    if (!std::isfinite(cur) || std::abs(cur) > opt.divergence_threshold)
      throw NonFinite("nu-form partial sum exceeds " + std::to_string(opt.divergence_threshold));
    const bool done = std::abs(cur - prev) <= opt.relative_tolerance * std::abs(cur) || cur == 0.0;
    prev = cur;
    if (done) break;
  }
  return prev;
}

double nu_component(const LevelMeasure& nu, int k, const QCFunction& f, const NuEvaluationOptions& opt) {
  if (nu.is_atomic_representation()) {
    double s = 0.0;
    for (const Atom& a : nu.atomic_part().atoms)
      if (a.mass != 0.0) s += a.mass * intrinsic_volume(level_set(f, a.location), k);
    return s;
  }
  const auto& g = nu.density_part();
  const double top = max_value(f);
  double total = 0.0;
  if (f.is_simple()) {
    const SimpleFunction sf = f.as_simple();
    std::vector<double> v;
    for (const ConvexBody& b : sf.bodies) v.push_back(intrinsic_volume(b, k));
    for (std::size_t j = 0; j < g.knots.size(); ++j) {
      if (g.densities[j] == 0.0) continue;
      const double b = j + 1 < g.knots.size() ? g.knots[j + 1] : top;
      total += g.densities[j] * step_integral(sf.levels, v, g.knots[j], b);
    }
    return total;
  }
  const auto& p = std::get<RadialProfile>(f.rule());
  const RadialIntegrand u{&p, f.dimension(), k, top};
  // The profile of a radial function is smooth between the table values.
  std::vector<double> breaks = p.kind == RadialProfile::Kind::Table ? p.values : std::vector<double>{};
  for (std::size_t j = 0; j < g.knots.size(); ++j) {
    if (g.densities[j] == 0.0) continue;
    const double a = g.knots[j];
    const double b = std::min(top, j + 1 < g.knots.size() ? g.knots[j + 1] : top);
    if (!(b > a)) continue;
    std::vector<double> cuts{a};
    for (double w : breaks)
      if (w > a && w < b) cuts.push_back(w);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      total += g.densities[j] * refined_integral(u, cuts[c], cuts[c + 1], opt);
      if (!std::isfinite(total) || std::abs(total) > opt.divergence_threshold)
        throw NonFinite("nu-form partial sum exceeds " + std::to_string(opt.divergence_threshold));
    }
  }
  return total;
}

}  // namespace

AdmissibilityReport validate_spec(const ValuationSpec& spec) {
  AdmissibilityReport r;
  const double delta = spec.delta;
  if (spec.is_phi()) {
    for (const PhiComponent& c : spec.phi().components) {
      const std::string name = "phi_" + std::to_string(c.k);
      if (c.k < 0) {
        r.well_defined = false;
        r.notes.push_back(name + ": negative index");
        continue;
      }
      if (!c.phi.is_nondecreasing()) {
        r.monotone = false;
        r.notes.push_back(name + " is not nondecreasing, so the valuation is not monotone");
      }
      if (c.k == 0) continue;
      if (!(delta > 0.0) && !c.phi.is_zero()) {
        r.well_defined = false;
        r.notes.push_back(name + ": no positive cutoff delta given");
      } else if (delta > 0.0 && !c.phi.vanishes_on(delta)) {
        r.well_defined = false;
        r.notes.push_back(name + " does not vanish on [0, " + std::to_string(delta) + "]");
      }
      if (!c.phi.negative_part_vanishes_near_zero()) {
        r.negative_part_vanishes = false;
        r.notes.push_back(name + ": negative part does not vanish near 0");
      }
    }
    return r;
  }
  for (const NuComponent& c : spec.nu().components) {
    const std::string name = "nu_" + std::to_string(c.k);
    if (c.k < 0) {
      r.well_defined = false;
      r.notes.push_back(name + ": negative index");
      continue;
    }
    if (c.nu.has_atoms()) {
      r.continuous = false;
      r.notes.push_back(name + " has atoms, so the valuation is not continuous");
    }
    if (c.k == 0) continue;
    if (!(delta > 0.0) && !c.nu.is_zero()) {
      r.well_defined = false;
      r.notes.push_back(name + ": no positive cutoff delta given");
    } else if (delta > 0.0 && c.nu.cumulative(delta) != 0.0) {
      r.well_defined = false;
      r.notes.push_back(name + " charges [0, " + std::to_string(delta) + "]");
    }
  }
  return r;
}

double evaluate_phi_form(const ValuationSpec& spec, const QCFunction& f, const PhiEvaluationOptions& options) {
  if (!spec.is_phi()) throw InvalidArgument("evaluate_phi_form needs a phi-form");
  if (options.enforce_admissibility) {
    const AdmissibilityReport r = validate_spec(spec);
    if (!r.well_defined) throw InadmissibleSpec(r.notes.empty() ? "phi-form is not well defined" : r.notes.front());
  }
  double total = 0.0;
  for (const PhiComponent& c : spec.phi().components) {
    check_index(c.k, f);
    if (c.phi.is_zero()) continue;
    total += integrate_against(c.phi, sk_measure(f, c.k, options.refinement));
  }
  return total;
}

double evaluate_nu_form(const ValuationSpec& spec, const QCFunction& f, const NuEvaluationOptions& options) {
  if (spec.is_phi()) throw InvalidArgument("evaluate_nu_form needs a nu-form");
  if (!(max_value(f) > 0.0)) return 0.0;
  double total = 0.0;
  for (const NuComponent& c : spec.nu().components) {
    check_index(c.k, f);
    total += nu_component(c.nu, c.k, f, options);
  }
  return total;
}

double evaluate(const ValuationSpec& spec, const QCFunction& f) {
  return spec.is_phi() ? evaluate_phi_form(spec, f) : evaluate_nu_form(spec, f);
}

std::pair<LevelMeasure, LevelMeasure> phi_to_nu(const ScalarFunction& phi) {
  using Kind = ScalarFunction::Kind;
  if (phi(0.0) != 0.0) throw InvalidArgument("phi must vanish at 0");
  switch (phi.kind()) {
    case Kind::Constant:
      return {LevelMeasure::zero(), LevelMeasure::zero()};
    case Kind::TruncatedLinear: {
      const double s = phi.coefficient();
      const double d = phi.cutoff();
      const std::vector<double> knots = d > 0.0 ? std::vector<double>{0.0, d} : std::vector<double>{0.0};
      auto tail = [&](double v) {
        std::vector<double> dens(knots.size(), 0.0);
        dens.back() = v;
        return LevelMeasure::density(knots, dens);
      };
      return {tail(std::max(0.0, s)), tail(std::max(0.0, -s))};
    }
    case Kind::Power:
      throw UnsupportedRepresentation("power functions have no piecewise-constant derivative");
    case Kind::Table:
      break;
  }
  const auto& t = phi.knots();
  const auto& v = phi.values();
  std::vector<double> plus(t.size(), 0.0), minus(t.size(), 0.0);
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const double slope = (v[j + 1] - v[j]) / (t[j + 1] - t[j]);
    plus[j] = std::max(0.0, slope);
    minus[j] = std::max(0.0, -slope);
  }
  return {LevelMeasure::density(t, plus), LevelMeasure::density(t, minus)};
}

ScalarFunction nu_to_phi(const LevelMeasure& nu) {
  if (nu.is_atomic_representation()) {
    if (nu.has_atoms()) throw UnsupportedRepresentation("an atomic measure has no continuous distribution function");
    return ScalarFunction::zero();
  }
  if (nu.has_unbounded_tail()) throw UnboundedSupport("density has an infinite tail");
  const auto& g = nu.density_part();
  std::vector<std::pair<double, double>> table;
  if (g.knots.front() > 0.0) table.emplace_back(0.0, 0.0);
  double acc = 0.0;
  for (std::size_t j = 0; j < g.knots.size(); ++j) {
    table.emplace_back(g.knots[j], acc);
    if (j + 1 < g.knots.size()) acc += g.densities[j] * (g.knots[j + 1] - g.knots[j]);
  }
  return ScalarFunction::table(std::move(table));
}

SignedNuForm convert_to_nu(const ValuationSpec& phi_spec) {
  if (!phi_spec.is_phi()) throw InvalidArgument("convert_to_nu needs a phi-form");
  NuForm pos, neg;
  for (const PhiComponent& c : phi_spec.phi().components) {
    auto [p, n] = phi_to_nu(c.phi);
    pos.components.push_back({c.k, std::move(p)});
    neg.components.push_back({c.k, std::move(n)});
  }
  return {ValuationSpec{std::move(pos), phi_spec.delta}, ValuationSpec{std::move(neg), phi_spec.delta}};
}

ValuationSpec convert_to_phi(const ValuationSpec& nu_spec) {
  if (nu_spec.is_phi()) throw InvalidArgument("convert_to_phi needs a nu-form");
  PhiForm out;
  for (const NuComponent& c : nu_spec.nu().components) out.components.push_back({c.k, nu_to_phi(c.nu)});
  return ValuationSpec{std::move(out), nu_spec.delta};
}

double evaluate(const SignedNuForm& form, const QCFunction& f) {
  return evaluate_nu_form(form.positive, f) - evaluate_nu_form(form.negative, f);
}

LayerCakeResult layer_cake(const ScalarFunction& phi, const QCFunction& f, std::size_t samples, std::uint64_t seed,
                           int refinement) {
  if (samples < 2) throw InvalidArgument("layer cake needs at least two samples");
  LayerCakeResult out;
  out.samples = samples;
  out.seed = seed;
  const int n = f.dimension();
  out.measure_value = integrate_against(phi, sk_measure(f, n, refinement));
  const ConvexBody supp = support(f);
  if (supp.is_empty()) {
    out.gap = std::abs(out.measure_value);
    return out;
  }
  const BoundingBox box = bounding_box(supp);
  const double vol = box.volume();
  if (vol > 0.0) {
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    for (int d = 0; d < n; ++d) axes.emplace_back(box.lower[d], box.upper[d]);
    Vec x(n);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      for (int d = 0; d < n; ++d) x[d] = axes[d](rng);
      const double y = phi(evaluate(f, x));
      const double delta = y - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (y - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    out.integral = vol * mean;
    out.standard_error = vol * std::sqrt(var / static_cast<double>(samples));
  }
  out.gap = std::abs(out.integral - out.measure_value);
  return out;
}

}  // namespace qcval
