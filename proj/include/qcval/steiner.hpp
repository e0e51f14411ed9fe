#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcval/geometry.hpp"

namespace qcval {

/// Intrinsic volumes recovered from sampled parallel-body volumes.
struct SteinerEstimate {
  std::vector<double> values;           ///< V_0..V_N estimates
  std::vector<double> standard_errors;  ///< one per entry
  std::vector<double> parallel_volumes; ///< Vol(K_eps) estimate per epsilon
  double condition_number = 0.0;        ///< of the epsilon Vandermonde matrix
};

inline constexpr double kMaxSteinerCondition = 1e8;

/// Estimates Vol(K_eps) by uniform rejection sampling over the bounding box of
/// K grown by max(eps), then least-squares fits
///   Vol(K_eps) = sum_i V_i(K) omega_{N-i} eps^{N-i}.
/// All epsilons share one sample set; the error bars propagate the resulting
/// multinomial covariance through the fit. Deterministic in (samples, seed).
SteinerEstimate steiner_fit_oracle(const ConvexBody& body, std::span<const double> epsilons,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace qcval
