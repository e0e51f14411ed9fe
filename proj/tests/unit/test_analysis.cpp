#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qcval/analysis.hpp"
#include "qcval/errors.hpp"
#include "qcval/fixtures.hpp"

using namespace qcval;

namespace {

std::vector<FunctionPair> pairs_in(int dim, std::size_t count, std::uint64_t seed) {
  std::vector<FunctionPair> out;
  for (auto& p : lattice_pairs(count, seed))
    if (p.first.dimension() == dim) out.push_back(p);
  return out;
}

QCFunction unit_cone() { return QCFunction::cone({0.0, 0.0}, 1.0, 1.0); }

}  // namespace

TEST_CASE("valuation identity holds for planted forms") {
  for (int dim : {2, 3}) {
    const auto pairs = pairs_in(dim, 40, 7);
    REQUIRE(pairs.size() >= 10);
    for (const auto& spec : planted_phi_forms(dim)) {
      const CheckReport r = check_valuation_identity(from_spec("phi", spec), pairs, 1e-9);
      CHECK(r.passed);
      CHECK(r.evaluated + r.skipped == pairs.size());
      CHECK(r.evaluated > 0);
    }
    for (const auto& spec : planted_nu_forms(dim)) {
      const CheckReport r = check_valuation_identity(from_spec("nu", spec), pairs, 1e-9);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("squared integral violates the identity") {
  const auto pairs = pairs_in(2, 40, 7);
  const CheckReport r = check_valuation_identity(planted_squared_integral(), pairs, 1e-9);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.witnesses.empty());
  CHECK(r.max_residual > 1e-3);

  // Comparable pairs have f v g = f and f ^ g = g, so they never witness.
  const QCFunction f = QCFunction::indicator(1.0, ConvexBody::box({0, 0}, {1, 1}));
  const std::vector<FunctionPair> same{{f, f}};
  const CheckReport r2 = check_valuation_identity(planted_squared_integral(), same, 1e-12);
  CHECK(r2.passed);
  CHECK(r2.max_residual == 0.0);
}

TEST_CASE("squared integral residual matches a hand computation") {
  // f = I_[0,2]x[0,1], g = I_[1,3]x[0,1]: integrals 2, 2, join 3, meet 1.
  const QCFunction f = QCFunction::indicator(1.0, ConvexBody::box({0, 0}, {2, 1}));
  const QCFunction g = QCFunction::indicator(1.0, ConvexBody::box({1, 0}, {3, 1}));
  const std::vector<FunctionPair> pair{{f, g}};
  const CheckReport r = check_valuation_identity(planted_squared_integral(), pair, 1e-9);
  CHECK(r.max_residual == doctest::Approx(std::abs(4.0 + 4.0 - 9.0 - 1.0)));
}

TEST_CASE("non-convex unions are skipped") {
  const QCFunction f = QCFunction::indicator(1.0, ConvexBody::box({0, 0}, {1, 1}));
  const QCFunction g = QCFunction::indicator(1.0, ConvexBody::box({2, 0}, {3, 1}));
  const std::vector<FunctionPair> pair{{f, g}};
  const CheckReport r = check_valuation_identity(planted_squared_integral(), pair, 1e-9);
  CHECK(r.skipped == 1);
  CHECK(r.evaluated == 0);
  CHECK(r.passed);
}

TEST_CASE("invariance under random motions") {
  const auto fs = random_polygon_functions(3, 11);
  const auto mu = from_spec("phi", planted_phi_forms(2)[4]);
  for (const auto& f : fs) {
    const CheckReport r = check_invariance(mu, f, 30, 5, 1e-9);
    CHECK(r.passed);
    CHECK(r.evaluated == 30);
  }
  const CheckReport bad = check_invariance(planted_centroid_x(), fs[0], 30, 5, 1e-9);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.witnesses.empty());

  const std::vector<RigidMotion> ident{RigidMotion::identity(2)};
  const CheckReport id = check_invariance(planted_centroid_x(), fs[0], ident, 1e-12);
  CHECK(id.max_residual == 0.0);
}

TEST_CASE("random rigid motions are proper and seeded") {
  std::mt19937_64 a(3), b(3);
  for (int dim : {2, 3, 4}) {
    const RigidMotion m = random_rigid_motion(dim, a);
    const RigidMotion n = random_rigid_motion(dim, b);
    CHECK(m.rotation_matrix() == n.rotation_matrix());
    CHECK(m.translation() == n.translation());
    for (double v : m.translation()) CHECK(std::abs(v) <= 5.0);
  }
  // Mean of R_00 over Haar rotations of R^3 is 0.
  std::mt19937_64 rng(9);
  double sum = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) sum += random_rigid_motion(3, rng).rotation(0, 0);
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(3.0 * n));
}

TEST_CASE("continuity on the dyadic cone sequence") {
  // phi = t with k = N gives the integral; the cone integrates to pi/3.
  const ValuationSpec spec{PhiForm{{{2, ScalarFunction::power(1)}}}, 0.0};
  const auto mu = from_spec("integral", spec, false);
  // Radial input is evaluated on its depth-12 dyadic approximation:
  // sum_j 2^-12 pi (1 - j 2^-12)^2.
  double dyadic = 0.0;
  for (int j = 1; j <= 4096; ++j) dyadic += std::numbers::pi * std::pow(1.0 - j / 4096.0, 2) / 4096.0;
  CHECK(mu(unit_cone()) == doctest::Approx(dyadic).epsilon(1e-12));
  CHECK(std::abs(mu(unit_cone()) - std::numbers::pi / 3) < 1e-3);
  const CheckReport r = check_continuity(mu, unit_cone(), ContinuityMode::IncreasingDyadic, 12, 1e-3);
  CHECK(r.passed);
  REQUIRE(r.sequence.size() == 12);
  for (std::size_t i = 1; i < r.sequence.size(); ++i) CHECK(r.sequence[i] >= r.sequence[i - 1] - 1e-12);
  CHECK(r.max_residual < 1e-3);

  const CheckReport c = check_continuity(mu, unit_cone(), ContinuityMode::Constant, 4);
  CHECK(c.max_residual == 0.0);

  const CheckReport d = check_continuity(mu, unit_cone(), ContinuityMode::DecreasingTruncation, 20, 1e-5);
  CHECK(d.passed);
}

TEST_CASE("atomic nu-form is discontinuous along increasing scalings") {
  const Counterexample ce = atomic_counterexample(2, 20, 1.0);
  CHECK(ce.value_at_limit == doctest::Approx(std::numbers::pi));
  CHECK(ce.sequence_limit == 0.0);
  for (const auto& row : ce.rows) CHECK(row.value == 0.0);

  const ValuationSpec spec{NuForm{{{2, LevelMeasure::dirac(1.0)}}}, 1.0};
  const QCFunction f = QCFunction::indicator(1.0, ConvexBody::ball({0.0, 0.0}, 1.0));
  const CheckReport r = check_continuity(from_spec("dirac", spec), f, ContinuityMode::IncreasingScaling, 20);
  CHECK_FALSE(r.passed);
  CHECK(r.max_residual == doctest::Approx(std::numbers::pi));
}

TEST_CASE("psi extraction recovers the level measure mass") {
  const std::vector<double> radii{1.0, 2.0, 4.0};
  const ValuationSpec spec{NuForm{{{2, LevelMeasure::uniform(0.5, 1.0)}}}, 0.5};
  const PsiExtraction p = extract_psi(from_spec("nu", spec), 2, 0.75, radii);
  REQUIRE(p.psi.size() == 3);
  CHECK(std::abs(p.psi[0]) < 1e-8);
  CHECK(std::abs(p.psi[1]) < 1e-8);
  CHECK(std::abs(p.psi[2] - 0.25) < 1e-8);
  CHECK(p.condition_number > 1.0);

  const PsiExtraction z = extract_psi(from_spec("nu", spec), 2, 0.0, radii);
  for (double v : z.psi) CHECK(v == 0.0);

  const ScalarFunction phi0 = ScalarFunction::table({{0, 0}, {1, 2}, {2, 2.5}});
  const ValuationSpec euler{PhiForm{{{0, phi0}}}, 0.25};
  for (double t : {0.3, 1.0, 1.7}) {
    const PsiExtraction e = extract_psi(from_spec("euler", euler, false), 2, t, radii);
    CHECK(e.psi[0] == doctest::Approx(phi0(t)).epsilon(1e-10));
    CHECK(std::abs(e.psi[1]) < 1e-8);
    CHECK(std::abs(e.psi[2]) < 1e-8);
  }

  const std::vector<double> clustered{1.0, 1.0 + 1e-7, 1.0 + 2e-7};
  CHECK_THROWS_AS(extract_psi(from_spec("nu", spec), 2, 0.75, clustered), IllConditionedSystem);
  CHECK_THROWS_AS(extract_psi(from_spec("nu", spec), 2, 0.75, std::vector<double>{1.0, 2.0}), InvalidArgument);
}

TEST_CASE("hadwiger fit recovers planted coefficients") {
  std::mt19937_64 rng(1);
  std::vector<ConvexBody> sample;
  for (int i = 0; i < 6; ++i) sample.push_back(random_polygon(rng));
  sample.push_back(ConvexBody::ball({0.0, 0.0}, 1.5));
  sample.push_back(ConvexBody::segment({0.0, 0.0}, {2.0, 1.0}));
  sample.push_back(ConvexBody::point({1.0, 1.0}));

  const HadwigerFit a = hadwiger_fit(intrinsic_combination({2.0, 0.0, 3.0}), sample);
  CHECK(a.coefficients[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(a.coefficients[1]) < 1e-9);
  CHECK(a.coefficients[2] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(a.max_residual < 1e-9);
  CHECK(a.nonnegative);

  const HadwigerFit v = hadwiger_fit(intrinsic_combination({0.0, 0.0, 1.0}), sample);
  CHECK(v.coefficients[2] == doctest::Approx(1.0).epsilon(1e-10));

  const HadwigerFit z = hadwiger_fit(intrinsic_combination({0.0, 0.0, 0.0}), sample);
  for (double c : z.coefficients) CHECK(c == 0.0);

  // sigma_t of a phi-form is sum_k phi_k(t) V_k.
  const ValuationSpec spec{PhiForm{{{1, ScalarFunction::truncated_linear(0.25)}, {2, ScalarFunction::constant(-1.0)}}}, 0.25};
  const HadwigerFit s = hadwiger_fit(sigma_t(from_spec("phi", spec, false), 1.25), sample);
  CHECK(std::abs(s.coefficients[0]) < 1e-9);
  CHECK(s.coefficients[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.coefficients[2] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_FALSE(s.nonnegative);

  // Homothetic disks only span (1, r, r^2): three radii suffice, two do not.
  std::vector<ConvexBody> disks{ConvexBody::ball({0.0, 0.0}, 1.0), ConvexBody::ball({0.0, 0.0}, 2.0)};
  CHECK_THROWS_AS(hadwiger_fit(intrinsic_combination({1.0, 1.0, 1.0}), disks), RankDeficientSample);
  std::vector<ConvexBody> points{ConvexBody::point({0.0, 0.0}), ConvexBody::point({1.0, 0.0}),
                                 ConvexBody::point({0.0, 1.0})};
  CHECK_THROWS_AS(hadwiger_fit(intrinsic_combination({1.0, 1.0, 1.0}), points), RankDeficientSample);
}
