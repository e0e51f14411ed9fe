#include "qcval/steiner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "qcval/errors.hpp"

namespace qcval {

SteinerEstimate steiner_fit_oracle(const ConvexBody& body, std::span<const double> epsilons,
                                   std::size_t samples, std::uint64_t seed) {
  const int n = body.ambient_dimension();
  const int m = static_cast<int>(epsilons.size());
  if (samples == 0) throw InvalidArgument("steiner oracle needs a positive sample count");
  for (double e : epsilons)
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("epsilons must be positive");

  std::vector<double> distinct(epsilons.begin(), epsilons.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (static_cast<int>(distinct.size()) < n + 1)
    throw IllConditionedFit("need at least N+1 = " + std::to_string(n + 1) + " distinct epsilons, got " +
                            std::to_string(distinct.size()));

  Eigen::MatrixXd vander(m, n + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) vander(i, j) = std::pow(epsilons[i], j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vander);
  const auto sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= kMaxSteinerCondition))
    throw IllConditionedFit("Vandermonde condition number " + std::to_string(cond) + " exceeds 1e8");

  SteinerEstimate est;
  est.condition_number = cond;
  if (body.is_empty()) {
    est.values.assign(n + 1, 0.0);
    est.standard_errors.assign(n + 1, 0.0);
    est.parallel_volumes.assign(m, 0.0);
    return est;
  }

  const double grow = distinct.back();
  BoundingBox bb = bounding_box(body);
  for (int i = 0; i < n; ++i) {
    bb.lower[i] -= grow;
    bb.upper[i] += grow;
  }
  const double box_volume = bb.volume();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> hits(m, 0);
  Vec x(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) x[i] = bb.lower[i] + (bb.upper[i] - bb.lower[i]) * unit(rng);
    const double d = distance(body, x);
    for (int e = 0; e < m; ++e)
      if (d <= epsilons[e]) ++hits[e];
  }

  const double ns = static_cast<double>(samples);
  Eigen::VectorXd y(m);
  Eigen::MatrixXd cov(m, m);
  for (int i = 0; i < m; ++i) {
    const double pi = hits[i] / ns;
    y(i) = box_volume * pi;
    for (int j = 0; j < m; ++j) {
      // The events {d <= eps} are nested: P(both) is the smaller probability.
      const double pj = hits[j] / ns;
      cov(i, j) = box_volume * box_volume * (std::min(pi, pj) - pi * pj) / ns;
    }
  }

  Eigen::MatrixXd design(m, n + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) design(i, j) = unit_ball_volume(n - j) * std::pow(epsilons[i], n - j);
  const Eigen::MatrixXd pinv = design.completeOrthogonalDecomposition().pseudoInverse();
  const Eigen::VectorXd coef = pinv * y;
  const Eigen::MatrixXd coef_cov = pinv * cov * pinv.transpose();

  est.values.resize(n + 1);
  est.standard_errors.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    est.values[j] = coef(j);
    est.standard_errors[j] = std::sqrt(std::max(0.0, coef_cov(j, j)));
  }
  est.parallel_volumes.assign(y.data(), y.data() + m);
  return est;
}

}  // namespace qcval
