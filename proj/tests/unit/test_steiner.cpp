#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qcval/errors.hpp"
#include "qcval/steiner.hpp"

using namespace qcval;

namespace {

const std::vector<double> kEps{0.1, 0.2, 0.4, 0.8};

void within_three_se(const ConvexBody& k, std::size_t samples, std::uint64_t seed) {
  const SteinerEstimate e = steiner_fit_oracle(k, kEps, samples, seed);
  const IntrinsicVolumeVector exact = intrinsic_volumes(k);
  for (std::size_t j = 0; j < exact.size(); ++j) {
    INFO("k=" << j << " exact=" << exact[j] << " mc=" << e.values[j] << " se=" << e.standard_errors[j]);
    CHECK(std::abs(e.values[j] - exact[j]) <= 3 * e.standard_errors[j]);
  }
}

}  // namespace

TEST_CASE("disk V_1 within three standard errors of pi") {
  const SteinerEstimate e = steiner_fit_oracle(ConvexBody::ball({0, 0}, 1), kEps, 1000000, 11);
  CHECK(std::abs(e.values[1] - std::numbers::pi) <= 3 * e.standard_errors[1]);
  CHECK(e.condition_number < kMaxSteinerCondition);
}

TEST_CASE("square and segment agree with closed forms") {
  within_three_se(ConvexBody::box({0, 0}, {1, 1}), 1000000, 5);
  within_three_se(ConvexBody::segment({0, 0}, {1.5, 0.5}), 1000000, 6);
}

TEST_CASE("fit is deterministic in the seed") {
  const ConvexBody k = ConvexBody::ball({0, 0}, 1);
  const SteinerEstimate a = steiner_fit_oracle(k, kEps, 20000, 42), b = steiner_fit_oracle(k, kEps, 20000, 42);
  CHECK(a.values == b.values);
  CHECK(a.standard_errors == b.standard_errors);
  const SteinerEstimate c = steiner_fit_oracle(k, kEps, 20000, 43);
  CHECK(a.values != c.values);
}

TEST_CASE("underdetermined or clustered epsilon grids are rejected") {
  const ConvexBody cube = ConvexBody::box({0, 0, 0}, {1, 1, 1});
  const std::vector<double> two{0.1, 0.2};
  CHECK_THROWS_AS(steiner_fit_oracle(cube, two, 1000, 0), IllConditionedFit);
  const std::vector<double> clustered{0.1, 0.1000001, 0.1000002, 0.1000003};
  CHECK_THROWS_AS(steiner_fit_oracle(cube, clustered, 1000, 0), IllConditionedFit);
}
