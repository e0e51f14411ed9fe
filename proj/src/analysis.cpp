#include "qcval/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcval/errors.hpp"

namespace qcval {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Integral of f, exact for simple f.
double integral_of(const QCFunction& f) {
  ValuationSpec spec{PhiForm{{{f.dimension(), ScalarFunction::power(1.0)}}}, 0.0};
  return evaluate_phi_form(spec, f, {.refinement = 12, .enforce_admissibility = false});
}

QCFunction sequence_member(const QCFunction& f, ContinuityMode mode, int i) {
  switch (mode) {
    case ContinuityMode::IncreasingDyadic:
      return dyadic_approximation(f, i);
    case ContinuityMode::DecreasingTruncation:
      return scale_values(f, 1.0 + std::ldexp(1.0, -i));
    case ContinuityMode::IncreasingScaling:
      return i == 1 ? QCFunction::zero(f.dimension()) : scale_values(f, 1.0 - 1.0 / i);
    case ContinuityMode::Constant:
      return f;
  }
  return f;
}

}  // namespace

BlackBoxValuation from_spec(std::string name, ValuationSpec spec, bool enforce_admissibility) {
  const AdmissibilityReport r = validate_spec(spec);
  ValuationProperties props{true, r.continuous, r.monotone, false};
  if (spec.is_phi()) {
    PhiEvaluationOptions opt;
    opt.enforce_admissibility = enforce_admissibility;
    return {std::move(name), [spec, opt](const QCFunction& f) { return evaluate_phi_form(spec, f, opt); }, props};
  }
  return {std::move(name), [spec](const QCFunction& f) { return evaluate_nu_form(spec, f); }, props};
}

BlackBoxValuation planted_squared_integral() {
  return {"squared-integral",
          [](const QCFunction& f) {
            const double s = integral_of(f);
            return s * s;
          },
          {true, true, true, false}};
}

BlackBoxValuation planted_centroid_x() {
  return {"support-centroid-x",
          [](const QCFunction& f) {
            const ConvexBody supp = support(f);
            if (supp.is_empty()) return 0.0;
            const BoundingBox b = bounding_box(supp);
            return 0.5 * (b.lower[0] + b.upper[0]);
          },
          {false, true, false, false}};
}

BodyValuation sigma_t(BlackBoxValuation mu, double t) {
  if (!(t > 0.0)) throw InvalidArgument("sigma_t needs t > 0");
  std::string name = mu.name + "@t=" + fmt(t);
  const ValuationProperties props = mu.properties;
  return {std::move(name),
          [mu = std::move(mu), t](const ConvexBody& k) {
            return mu(k.is_empty() ? QCFunction::zero(k.ambient_dimension()) : QCFunction::indicator(t, k));
          },
          props};
}

BodyValuation intrinsic_combination(std::vector<double> coefficients) {
  bool nonneg = std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c >= 0.0; });
  return {"intrinsic-combination",
          [c = std::move(coefficients)](const ConvexBody& k) {
            const IntrinsicVolumeVector v = intrinsic_volumes(k);
            double s = 0.0;
            for (std::size_t i = 0; i < c.size() && i < v.size(); ++i) s += c[i] * v[i];
            return s;
          },
          {true, true, nonneg, false}};
}

CheckReport check_valuation_identity(const BlackBoxValuation& mu, std::span<const FunctionPair> pairs,
                                     double tolerance) {
  CheckReport r;
  r.name = "valuation-identity:" + mu.name;
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [f, g] = pairs[i];
    QCFunction join = QCFunction::zero(f.dimension()), meet = join;
    try {
      join = lattice_max(f, g);
      meet = lattice_min(f, g);
    } catch (const NotConvexUnion& e) {
      ++r.skipped;
      r.notes.push_back("pair " + std::to_string(i) + " skipped: " + e.what());
      continue;
    } catch (const UnsupportedPair& e) {
      ++r.skipped;
      r.notes.push_back("pair " + std::to_string(i) + " skipped: " + e.what());
      continue;
    }
    const double lhs = mu(f) + mu(g);
    const double rhs = mu(join) + mu(meet);
    const double res = std::abs(lhs - rhs);
    ++r.evaluated;
    r.max_residual = std::max(r.max_residual, res);
    if (!(res <= tolerance))
      r.witnesses.push_back("pair " + std::to_string(i) + ": mu(f)+mu(g)=" + fmt(lhs) + " mu(f v g)+mu(f ^ g)=" +
                            fmt(rhs) + " residual=" + fmt(res));
  }
  r.finalize();
  return r;
}

CheckReport check_invariance(const BlackBoxValuation& mu, const QCFunction& f, std::span<const RigidMotion> motions,
                             double tolerance) {
  CheckReport r;
  r.name = "invariance:" + mu.name;
  r.tolerance = tolerance;
  const double base = mu(f);
  const double scale = std::max(1.0, std::abs(base));
  for (std::size_t i = 0; i < motions.size(); ++i) {
    const double moved = mu(compose_rigid_motion(f, motions[i]));
    const double res = std::abs(moved - base) / scale;
    ++r.evaluated;
    r.max_residual = std::max(r.max_residual, res);
    if (!(res <= tolerance))
      r.witnesses.push_back("motion " + std::to_string(i) + ": mu(f)=" + fmt(base) + " mu(f o T)=" + fmt(moved) +
                            " relative residual=" + fmt(res));
  }
  r.finalize();
  return r;
}

CheckReport check_invariance(const BlackBoxValuation& mu, const QCFunction& f, int motions, std::uint64_t seed,
                             double tolerance, double translation_scale) {
  if (motions < 0) throw InvalidArgument("motion count must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<RigidMotion> list;
  for (int i = 0; i < motions; ++i) list.push_back(random_rigid_motion(f.dimension(), rng, translation_scale));
  return check_invariance(mu, f, list, tolerance);
}

const char* to_string(ContinuityMode mode) {
  switch (mode) {
    case ContinuityMode::IncreasingDyadic:
      return "increasing-dyadic";
    case ContinuityMode::DecreasingTruncation:
      return "decreasing-truncation";
    case ContinuityMode::IncreasingScaling:
      return "increasing-scaling";
    case ContinuityMode::Constant:
      return "constant";
  }
  return "?";
}

CheckReport check_continuity(const BlackBoxValuation& mu, const QCFunction& f, ContinuityMode mode, int depth,
                             double tolerance) {
  if (depth < 1) throw InvalidArgument("continuity depth must be >= 1");
  CheckReport r;
  r.name = std::string("continuity:") + to_string(mode) + ":" + mu.name;
  r.tolerance = tolerance;
  const double target = mu(f);
  for (int i = 1; i <= depth; ++i) r.sequence.push_back(mu(sequence_member(f, mode, i)));
  r.evaluated = r.sequence.size();
  r.max_residual = std::abs(r.sequence.back() - target);
  bool up = true, down = true;
  for (std::size_t i = 1; i < r.sequence.size(); ++i) {
    if (r.sequence[i] < r.sequence[i - 1]) up = false;
    if (r.sequence[i] > r.sequence[i - 1]) down = false;
  }
  r.notes.push_back("mu(f)=" + fmt(target) + " mu(f_depth)=" + fmt(r.sequence.back()));
  r.notes.push_back(up && down ? "sequence constant" : up ? "sequence nondecreasing"
                                                      : down ? "sequence nonincreasing"
                                                             : "sequence not monotone");
  r.finalize();
  if (!r.passed)
    r.witnesses.push_back("depth " + std::to_string(depth) + ": |mu(f_i) - mu(f)|=" + fmt(r.max_residual));
  return r;
}

PsiExtraction extract_psi(const BlackBoxValuation& mu, int dimension, double t, std::span<const double> radii,
                          double max_condition) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  const int n = dimension + 1;
  if (static_cast<int>(radii.size()) != n) throw InvalidArgument("extract_psi needs exactly N + 1 radii");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("probe radii must be positive");

  const IntrinsicVolumeVector unit = intrinsic_volumes(ConvexBody::ball(Vec(dimension, 0.0), 1.0));
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = std::pow(radii[i], j) * unit[j];
    m(i) = t > 0.0 ? mu(QCFunction::indicator(t, ConvexBody::ball(Vec(dimension, 0.0), radii[i])))
                   : mu(QCFunction::zero(dimension));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto sv = svd.singularValues();
  PsiExtraction out;
  out.condition_number = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : INFINITY;
  if (!(out.condition_number <= max_condition))
    throw IllConditionedSystem("probe system condition number " + fmt(out.condition_number) + " exceeds " +
                               fmt(max_condition));
  const Eigen::VectorXd psi = a.fullPivLu().solve(m);
  out.psi.assign(psi.data(), psi.data() + n);
  return out;
}

HadwigerFit hadwiger_fit(const BodyValuation& sigma, std::span<const ConvexBody> sample) {
  if (sample.empty()) throw RankDeficientSample("empty sample");
  const int dim = sample.front().ambient_dimension();
  const int n = dim + 1;
  const int rows = static_cast<int>(sample.size());
  if (rows < n) throw RankDeficientSample("need at least N + 1 bodies, got " + std::to_string(rows));
  Eigen::MatrixXd x(rows, n);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    if (sample[i].ambient_dimension() != dim) throw InvalidArgument("sample bodies must share one dimension");
    const IntrinsicVolumeVector v = intrinsic_volumes(sample[i]);
    for (int j = 0; j < n; ++j) x(i, j) = v[j];
    y(i) = sigma(sample[i]);
  }
  // Scale columns so the rank test does not depend on units.
  Eigen::VectorXd colscale(n);
  for (int j = 0; j < n; ++j) {
    colscale(j) = x.col(j).norm();
    if (colscale(j) == 0.0) throw RankDeficientSample("V_" + std::to_string(j) + " vanishes on the whole sample");
    x.col(j) /= colscale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < n)
    throw RankDeficientSample("intrinsic-volume vectors span rank " + std::to_string(qr.rank()) + " < " +
                              std::to_string(n));
  const Eigen::VectorXd c = qr.solve(y).cwiseQuotient(colscale);
  HadwigerFit fit;
  fit.coefficients.assign(c.data(), c.data() + n);
  for (int i = 0; i < rows; ++i) {
    double pred = 0.0;
    for (int j = 0; j < n; ++j) pred += c(j) * x(i, j) * colscale(j);
    fit.residuals.push_back(std::abs(y(i) - pred));
    fit.max_residual = std::max(fit.max_residual, fit.residuals.back());
  }
  fit.nonnegative = std::all_of(fit.coefficients.begin(), fit.coefficients.end(), [](double v) { return v >= 0.0; });
  return fit;
}

Counterexample atomic_counterexample(int dimension, int depth, double t0) {
  if (depth < 1) throw InvalidArgument("depth must be >= 1");
  if (!(t0 > 0.0)) throw InvalidArgument("atom location must be positive");
  ValuationSpec spec{NuForm{{{dimension, LevelMeasure::dirac(t0)}}}, t0};
  const QCFunction f = QCFunction::indicator(t0, ConvexBody::ball(Vec(dimension, 0.0), 1.0));
  Counterexample out;
  out.value_at_limit = evaluate_nu_form(spec, f);
  for (int i = 1; i <= depth; ++i) {
    const double c = 1.0 - 1.0 / i;
    const QCFunction fi = i == 1 ? QCFunction::zero(dimension) : scale_values(f, c);
    out.rows.push_back({i, c, evaluate_nu_form(spec, fi)});
  }
  out.sequence_limit = out.rows.back().value;
  return out;
}

RigidMotion random_rigid_motion(int dimension, std::mt19937_64& rng, double translation_scale) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-translation_scale, translation_scale);
  Eigen::MatrixXd g(dimension, dimension);
  for (int i = 0; i < dimension; ++i)
    for (int j = 0; j < dimension; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dimension; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  std::vector<double> rot(dimension * dimension);
  for (int i = 0; i < dimension; ++i)
    for (int j = 0; j < dimension; ++j) rot[i * dimension + j] = q(i, j);
  Vec b(dimension);
  for (double& v : b) v = shift(rng);
  return RigidMotion::from_matrix(dimension, std::move(rot), std::move(b));
}

}  // namespace qcval
