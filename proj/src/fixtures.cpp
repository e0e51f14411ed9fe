#include "qcval/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcval/errors.hpp"

namespace qcval {
namespace {

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

std::vector<double> increasing_levels(std::mt19937_64& rng, int m) {
  std::vector<double> t;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += uniform(rng, 0.2, 1.0);
    t.push_back(acc);
  }
  return t;
}

// m nested intervals containing 0.
std::vector<std::pair<double, double>> nested_intervals(std::mt19937_64& rng, int m) {
  std::vector<std::pair<double, double>> out;
  double a = uniform(rng, 0.5, 2.0), b = uniform(rng, 0.5, 2.0);
  for (int i = 0; i < m; ++i) {
    out.emplace_back(-a, b);
    a *= uniform(rng, 0.3, 0.9);
    b *= uniform(rng, 0.3, 0.9);
  }
  return out;
}

QCFunction strip_function(std::mt19937_64& rng, const std::vector<double>& fixed_lo, const std::vector<double>& fixed_hi) {
  const int m = std::uniform_int_distribution<int>(1, 3)(rng);
  const auto t = increasing_levels(rng, m);
  const auto iv = nested_intervals(rng, m);
  std::vector<ConvexBody> bodies;
  for (const auto& [lo, hi] : iv) {
    Vec l{lo}, u{hi};
    l.insert(l.end(), fixed_lo.begin(), fixed_lo.end());
    u.insert(u.end(), fixed_hi.begin(), fixed_hi.end());
    bodies.push_back(ConvexBody::box(l, u));
  }
  return QCFunction::simple(t, std::move(bodies));
}

QCFunction scaled_chain(std::mt19937_64& rng, const ConvexBody& shape) {
  const int m = std::uniform_int_distribution<int>(1, 3)(rng);
  const auto t = increasing_levels(rng, m);
  std::vector<ConvexBody> bodies;
  double r = uniform(rng, 0.5, 1.5);
  for (int i = 0; i < m; ++i) {
    bodies.push_back(scale(shape, r));
    r *= uniform(rng, 0.4, 0.9);
  }
  return QCFunction::simple(t, std::move(bodies));
}

}  // namespace

ConvexBody random_polygon(std::mt19937_64& rng, int corners, double radius) {
  if (corners < 3) throw InvalidArgument("polygon needs at least 3 corners");
  // Jittered angles keep every gap below pi, so the origin stays inside.
  std::vector<Vec2> pts;
  const double step = 2.0 * std::numbers::pi / corners;
  for (int i = 0; i < corners; ++i) {
    const double a = step * (i + uniform(rng, -0.3, 0.3));
    const double r = radius * uniform(rng, 0.5, 1.0);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return ConvexBody::polygon(pts);
}

std::vector<FunctionPair> lattice_pairs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FunctionPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    switch (i % 4) {
      case 0: {
        const double h = uniform(rng, 0.5, 2.0);
        out.emplace_back(strip_function(rng, {0.0}, {h}), strip_function(rng, {0.0}, {h}));
        break;
      }
      case 1: {
        const ConvexBody p = random_polygon(rng);
        out.emplace_back(scaled_chain(rng, p), scaled_chain(rng, p));
        break;
      }
      case 2: {
        const double h = uniform(rng, 0.5, 2.0), d = uniform(rng, 0.5, 2.0);
        out.emplace_back(strip_function(rng, {0.0, 0.0}, {h, d}), strip_function(rng, {0.0, 0.0}, {h, d}));
        break;
      }
      default: {
        const ConvexBody disk = ConvexBody::ball({0.0, 0.0}, 1.0);
        out.emplace_back(scaled_chain(rng, disk), scaled_chain(rng, disk));
        break;
      }
    }
  }
  return out;
}

QCFunction random_polygon_function(std::mt19937_64& rng, int levels) {
  if (levels < 1) throw InvalidArgument("need at least one level");
  std::vector<ConvexBody> bodies{random_polygon(rng)};
  while (static_cast<int>(bodies.size()) < levels) {
    const BoundingBox b = bounding_box(bodies.back());
    const double cx = 0.5 * (b.lower[0] + b.upper[0]), cy = 0.5 * (b.lower[1] + b.upper[1]);
    const double wx = 0.5 * (b.upper[0] - b.lower[0]), wy = 0.5 * (b.upper[1] - b.lower[1]);
    const ConvexBody cut = ConvexBody::box({cx - wx * uniform(rng, 0.2, 0.8), cy - wy * uniform(rng, 0.2, 0.8)},
                                           {cx + wx * uniform(rng, 0.2, 0.8), cy + wy * uniform(rng, 0.2, 0.8)});
    ConvexBody next = intersect(bodies.back(), cut);
    if (next.dimension() == 2) bodies.push_back(std::move(next));
  }
  return QCFunction::simple(increasing_levels(rng, levels), std::move(bodies));
}

std::vector<QCFunction> random_polygon_functions(std::size_t count, std::uint64_t seed, int levels) {
  std::mt19937_64 rng(seed);
  std::vector<QCFunction> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_polygon_function(rng, levels));
  return out;
}

std::vector<ValuationSpec> planted_phi_forms(int n) {
  using SF = ScalarFunction;
  const int mid = std::max(1, n - 1);
  std::vector<ValuationSpec> out;
  out.push_back({PhiForm{{{n, SF::truncated_linear(0.25)}}}, 0.25});
  out.push_back({PhiForm{{{0, SF::table({{0, 0}, {1, 1}, {2, 1.5}})},
                          {1, SF::table({{0, 0}, {0.25, 0}, {0.75, 1}, {1.25, 0}})}}},
                 0.25});
  out.push_back({PhiForm{{{n, SF::table({{0, 0}, {0.5, 0}, {1.5, -2}, {3, -1}})}, {1, SF::truncated_linear(0.5, 2.0)}}},
                 0.25});
  out.push_back({PhiForm{{{mid, SF::table({{0, 0}, {0.3, 0}, {2, 3}})}, {0, SF::truncated_linear(0.1, -1.0)}}}, 0.25});
  PhiForm all;
  for (int k = 0; k <= n; ++k) all.components.push_back({k, SF::table({{0, 0}, {0.25, 0}, {1, k + 1.0}, {2, 0.5 * (k + 1)}})});
  out.push_back({std::move(all), 0.25});
  return out;
}

std::vector<ValuationSpec> planted_nu_forms(int n) {
  using LM = LevelMeasure;
  const int mid = std::max(1, n - 1);
  std::vector<ValuationSpec> out;
  out.push_back({NuForm{{{n, LM::uniform(0.25, 1.0)}}}, 0.25});
  out.push_back({NuForm{{{n, LM::dirac(1.0)}, {0, LM::dirac(0.5, 2.0)}}}, 0.25});
  out.push_back({NuForm{{{1, LM::density({0.25, 0.5, 2.0}, {1.0, 3.0, 0.0})}, {n, LM::atomic({{0.5, 1.0}, {1.5, 0.5}})}}},
                 0.25});
  NuForm all;
  for (int k = 0; k <= n; ++k) all.components.push_back({k, LM::uniform(0.3, 2.0, 1.0 / (k + 1))});
  out.push_back({std::move(all), 0.25});
  out.push_back({NuForm{{{0, LM::density({0.1}, {1.0})}, {mid, LM::dirac(0.75, 3.0)}, {n, LM::uniform(0.25, 3.0, 0.5)}}},
                 0.25});
  return out;
}

std::vector<ScalarFunction> piecewise_linear_phis() {
  using SF = ScalarFunction;
  return {
      SF::table({{0, 0}, {0.25, 0}, {1, 0.75}}),
      SF::table({{0, 0}, {0.25, 0}, {0.5, 1}, {0.75, 0}}),
      SF::table({{0, 0}, {0.25, 0}, {1, -1}, {2, 0.5}}),
      SF::table({{0, 0}, {0.3, 0}, {0.6, 2}, {1.2, 2}, {2.5, -0.5}}),
      SF::table({{0, 0}, {0.25, 0}, {3, 2.75}}),
      SF::table({{0, 0}, {0.4, 0}, {0.45, 5}, {0.5, 0}}),
      SF::table({{0, 0}, {0.25, 0}, {0.7, -0.3}, {1.1, 0.9}, {1.9, 0.1}, {2.6, 1.4}}),
      SF::table({{0, 0}, {0.5, 0}, {1.0, 1.0}, {1.5, 1.0}, {2.0, 2.0}}),
      SF::table({{0, 0}, {0.25, 0}, {0.26, 0.01}, {4, 0.01}}),
      SF::table({{0, 0}, {0.8, 0}, {0.9, -3}, {1.7, 4}, {2.2, 0}}),
  };
}

}  // namespace qcval
