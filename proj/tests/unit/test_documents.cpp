#include <string>

#include "doctest.h"
#include "qcval/documents.hpp"
#include "qcval/errors.hpp"

using namespace qcval;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("bodies round trip") {
  const std::vector<ConvexBody> bodies{
      ConvexBody::empty(2),
      ConvexBody::point({1.0, 2.0}),
      ConvexBody::segment({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}),
      ConvexBody::ball({0.0, 0.0, 0.0, 0.0}, 2.5),
      ConvexBody::box({0.0, 0.0}, {1.0, 3.0}),
      ConvexBody::polygon(std::vector<Vec2>{{0, 0}, {2, 0}, {1, 1.5}}),
      ConvexBody::polytope(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
  };
  for (const auto& b : bodies) {
    const ConvexBody back = parse_body(Json::parse(to_json(b).dump()));
    CHECK(back.kind() == b.kind());
    CHECK(same_set(back, b));
    const auto v = intrinsic_volumes(b), w = intrinsic_volumes(back);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(w[k] == doctest::Approx(v[k]).epsilon(1e-14));
  }
}

TEST_CASE("functions round trip") {
  const std::vector<QCFunction> fs{
      QCFunction::zero(3),
      QCFunction::indicator(2.0, ConvexBody::ball({0.0, 0.0}, 1.0)),
      QCFunction::simple({1.0, 2.0}, {ConvexBody::box({0, 0}, {1, 1}), ConvexBody::box({0, 0}, {0.5, 0.5})}),
      QCFunction::cone({0.0, 0.0}, 1.0, 2.0),
      QCFunction::gaussian({0.0, 0.0}, 1.0, 1.0),
  };
  const std::vector<std::vector<double>> probes{{0.1, 0.2}, {0.7, 0.3}, {1.5, -0.2}, {0.0, 0.0}};
  for (const auto& f : fs) {
    const QCFunction g = parse_function(Json::parse(to_json(f).dump()));
    CHECK(g.dimension() == f.dimension());
    if (f.dimension() != 2) continue;
    for (const auto& x : probes) CHECK(evaluate(g, x) == doctest::Approx(evaluate(f, x)).epsilon(1e-14));
  }
}

TEST_CASE("radial documents and truncation") {
  const Json doc = Json::parse(R"({"kind": "radial", "center": [0, 0], "profile": [[0, 2], [1, 1], [2, 0]]})");
  const QCFunction f = parse_function(doc);
  CHECK(evaluate(f, std::vector<double>{0.5, 0.0}) == doctest::Approx(1.5));
  const Json g = Json::parse(R"({"kind": "gaussian", "center": [0, 0], "height": 1, "width": 1, "truncate": 2})");
  CHECK(support(parse_function(g)).kind() == ShapeKind::Ball);
  CHECK_THROWS_AS(support(parse_function(Json::parse(R"({"kind": "gaussian", "center": [0], "height": 1, "width": 1})"))),
                  UnboundedSupport);
}

TEST_CASE("valuations round trip") {
  const Json phi = Json::parse(R"({"kind": "valuation", "form": "phi", "delta": 0.25, "components": [
      {"k": 2, "table": [[0, 0], [0.25, 0], [1, 2]]},
      {"k": 1, "truncated_linear": {"delta": 0.5, "slope": 3}},
      {"k": 0, "power": 1, "scale": 2}]})");
  const ValuationSpec a = parse_valuation(phi);
  REQUIRE(a.is_phi());
  CHECK(a.phi().components.size() == 3);
  const ValuationSpec a2 = parse_valuation(Json::parse(to_json(a).dump()));
  const QCFunction f = QCFunction::simple({1.0, 2.0}, {ConvexBody::box({0, 0}, {1, 1}), ConvexBody::box({0, 0}, {0.5, 0.5})});
  PhiEvaluationOptions loose;
  loose.enforce_admissibility = false;
  CHECK(evaluate_phi_form(a2, f, loose) == doctest::Approx(evaluate_phi_form(a, f, loose)).epsilon(1e-15));

  const Json nu = Json::parse(R"({"form": "nu", "delta": 0.5, "components": [
      {"k": 2, "atoms": [[1, 0.5], [1.5, 2]]},
      {"k": 0, "density": {"knots": [0.5, 1, 3], "values": [1, 2, 0]}}]})");
  const ValuationSpec b = parse_valuation(nu);
  REQUIRE_FALSE(b.is_phi());
  const ValuationSpec b2 = parse_valuation(Json::parse(to_json(b).dump()));
  CHECK(evaluate_nu_form(b2, f) == doctest::Approx(evaluate_nu_form(b, f)).epsilon(1e-15));
}

TEST_CASE("schema errors name the path") {
  CHECK(message_of([] { parse_body(Json::parse(R"({"shape": "ball", "center": [0, 0]})")); }).find("$.radius") !=
        std::string::npos);
  CHECK(message_of([] { parse_body(Json::parse(R"({"shape": "blob"})")); }).find("$.shape") != std::string::npos);
  CHECK(message_of([] { parse_body(Json::parse(R"({"kind": "function", "shape": "ball"})")); }).find("$.kind") !=
        std::string::npos);
  const std::string nested = message_of([] {
    parse_function(Json::parse(
        R"({"kind": "simple", "levels": [1, 2], "bodies": [{"shape": "box", "lower": [0, 0], "upper": [1, 1]},
                                                            {"shape": "box", "lower": [0, 0], "upper": "x"}]})"));
  });
  CHECK(nested.find("$.bodies[1].upper") != std::string::npos);
  const std::string comp = message_of([] {
    parse_valuation(Json::parse(R"({"form": "phi", "delta": 0.1, "components": [{"k": 1, "table": [[0, 0], [1]]}]})"));
  });
  CHECK(comp.find("$.components[0].table") != std::string::npos);
  CHECK_THROWS_AS(parse_valuation(Json::parse(R"({"form": "psi", "delta": 0, "components": []})")), InvalidArgument);
  CHECK_THROWS_AS(load_document("/nonexistent/doc.json"), InvalidArgument);
}

TEST_CASE("invalid geometry is reported as a schema error") {
  // Non-nested bodies are rejected by the simple-function invariant.
  const Json doc = Json::parse(R"({"kind": "simple", "levels": [1, 2], "bodies": [
      {"shape": "box", "lower": [0, 0], "upper": [1, 1]},
      {"shape": "box", "lower": [2, 2], "upper": [3, 3]}]})");
  CHECK_THROWS_AS(parse_function(doc), InvalidArgument);
}

TEST_CASE("check reports serialize") {
  CheckReport r;
  r.name = "x";
  r.max_residual = 0.5;
  r.tolerance = 1e-9;
  r.witnesses = {"pair 3"};
  r.finalize();
  const Json j = to_json(r);
  CHECK(j["name"] == "x");
  CHECK(j["residual"] == 0.5);
  CHECK(j["passed"] == false);
  CHECK(j["witnesses"].size() == 1);
}
