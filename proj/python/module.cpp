#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcval/analysis.hpp"
#include "qcval/divergence.hpp"
#include "qcval/documents.hpp"
#include "qcval/errors.hpp"
#include "qcval/fixtures.hpp"
#include "qcval/level_measures.hpp"
#include "qcval/steiner.hpp"
#include "qcval/valuations.hpp"

namespace py = pybind11;
using namespace qcval;

namespace {

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["residual"] = r.max_residual;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.passed;
  d["witnesses"] = r.witnesses;
  d["notes"] = r.notes;
  d["sequence"] = r.sequence;
  return d;
}

BlackBoxValuation wrap(const py::object& mu) {
  if (py::isinstance<ValuationSpec>(mu)) return from_spec("spec", mu.cast<ValuationSpec>(), false);
  auto fn = mu.cast<std::function<double(const QCFunction&)>>();
  return {"python", fn, {}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Valuations on quasi-concave functions";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<UnsupportedShapeDimension>(m, "UnsupportedShapeDimension", base.ptr());
  py::register_exception<IllConditionedFit>(m, "IllConditionedFit", base.ptr());
  py::register_exception<UnsupportedPair>(m, "UnsupportedPair", base.ptr());
  py::register_exception<NotConvexUnion>(m, "NotConvexUnion", base.ptr());
  py::register_exception<NonPositiveLevel>(m, "NonPositiveLevel", base.ptr());
  py::register_exception<InadmissibleSpec>(m, "InadmissibleSpec", base.ptr());
  py::register_exception<NonFinite>(m, "NonFinite", base.ptr());
  py::register_exception<UnsupportedRepresentation>(m, "UnsupportedRepresentation", base.ptr());
  py::register_exception<UnboundedSupport>(m, "UnboundedSupport", base.ptr());
  py::register_exception<PhiVanishesNearZero>(m, "PhiVanishesNearZero", base.ptr());
  py::register_exception<IllConditionedSystem>(m, "IllConditionedSystem", base.ptr());
  py::register_exception<RankDeficientSample>(m, "RankDeficientSample", base.ptr());
  py::register_exception<RequiresDiscretization>(m, "RequiresDiscretization", base.ptr());

  py::class_<ConvexBody>(m, "ConvexBody")
      .def_static("empty", &ConvexBody::empty, py::arg("dimension"))
      .def_static("point", &ConvexBody::point, py::arg("coords"))
      .def_static("segment", &ConvexBody::segment, py::arg("a"), py::arg("b"))
      .def_static("ball", &ConvexBody::ball, py::arg("center"), py::arg("radius"))
      .def_static("box", &ConvexBody::box, py::arg("lower"), py::arg("upper"))
      .def_static("polygon", [](const std::vector<Vec2>& v) { return ConvexBody::polygon(v); }, py::arg("vertices"))
      .def_static("polytope", [](const std::vector<Vec3>& v) { return ConvexBody::polytope(v); }, py::arg("points"))
      .def_property_readonly("ambient_dimension", &ConvexBody::ambient_dimension)
      .def_property_readonly("dimension", &ConvexBody::dimension)
      .def_property_readonly("kind", [](const ConvexBody& b) { return std::string(to_string(b.kind())); })
      .def("to_json", [](const ConvexBody& b) { return to_json(b).dump(); })
      .def("__repr__", &describe);

  m.def("intrinsic_volumes", [](const ConvexBody& b) { return intrinsic_volumes(b).values; });
  m.def("intersect", &intersect);
  m.def("union_if_convex", &union_if_convex);
  m.def("contains", &contains, py::arg("outer"), py::arg("inner"));
  m.def(
      "steiner_fit_oracle",
      [](const ConvexBody& b, const std::vector<double>& eps, std::size_t samples, std::uint64_t seed) {
        const SteinerEstimate e = steiner_fit_oracle(b, eps, samples, seed);
        py::dict d;
        d["values"] = e.values;
        d["standard_errors"] = e.standard_errors;
        d["parallel_volumes"] = e.parallel_volumes;
        d["condition_number"] = e.condition_number;
        return d;
      },
      py::arg("body"), py::arg("epsilons"), py::arg("samples"), py::arg("seed") = 0);

  py::class_<ScalarFunction>(m, "ScalarFunction")
      .def_static("table", &ScalarFunction::table, py::arg("points"))
      .def_static("power", &ScalarFunction::power, py::arg("p"), py::arg("scale") = 1.0)
      .def_static("truncated_linear", &ScalarFunction::truncated_linear, py::arg("delta"), py::arg("slope") = 1.0)
      .def_static("constant", &ScalarFunction::constant, py::arg("c"))
      .def("__call__", &ScalarFunction::operator());

  py::class_<LevelMeasure>(m, "LevelMeasure")
      .def_static("zero", &LevelMeasure::zero)
      .def_static(
          "atomic",
          [](const std::vector<std::pair<double, double>>& atoms) {
            std::vector<Atom> a;
            for (auto [t, w] : atoms) a.push_back({t, w});
            return LevelMeasure::atomic(std::move(a));
          },
          py::arg("atoms"))
      .def_static("dirac", &LevelMeasure::dirac, py::arg("location"), py::arg("mass") = 1.0)
      .def_static("density", &LevelMeasure::density, py::arg("knots"), py::arg("densities"))
      .def_static("uniform", &LevelMeasure::uniform, py::arg("a"), py::arg("b"), py::arg("density") = 1.0)
      .def("cumulative", &LevelMeasure::cumulative)
      .def("total_mass", &LevelMeasure::total_mass)
      .def_property_readonly("has_atoms", &LevelMeasure::has_atoms)
      .def("atoms", [](const LevelMeasure& nu) {
        std::vector<std::pair<double, double>> out;
        for (const Atom& a : nu.atomic_part().atoms) out.emplace_back(a.location, a.mass);
        return out;
      });

  py::class_<QCFunction>(m, "QCFunction")
      .def_static("zero", &QCFunction::zero, py::arg("dimension"))
      .def_static("indicator", &QCFunction::indicator, py::arg("height"), py::arg("body"))
      .def_static("simple", &QCFunction::simple, py::arg("levels"), py::arg("bodies"))
      .def_static(
          "radial",
          [](const Vec& c, const std::vector<std::pair<double, double>>& table) { return QCFunction::radial(c, table); },
          py::arg("center"), py::arg("table"))
      .def_static("cone", &QCFunction::cone, py::arg("center"), py::arg("height"), py::arg("radius"))
      .def_static("gaussian", &QCFunction::gaussian, py::arg("center"), py::arg("height"), py::arg("width"))
      .def_static("from_json", [](const std::string& s) { return parse_function(Json::parse(s)); })
      .def_property_readonly("dimension", &QCFunction::dimension)
      .def("max_value", &max_value)
      .def("level_set", &level_set, py::arg("t"))
      .def("__call__", [](const QCFunction& f, const Vec& x) { return evaluate(f, x); })
      .def("to_json", [](const QCFunction& f) { return to_json(f).dump(); });

  m.def("lattice_max", &lattice_max);
  m.def("lattice_min", &lattice_min);
  m.def("dyadic_approximation", &dyadic_approximation, py::arg("f"), py::arg("depth"));
  m.def("profile", [](const QCFunction& f, int k, const std::vector<double>& grid) { return profile(f, k, grid).values; },
        py::arg("f"), py::arg("k"), py::arg("grid"));
  m.def("sk_measure", &sk_measure, py::arg("f"), py::arg("k"), py::arg("refinement") = 12);
  m.def("integrate_against", &integrate_against, py::arg("phi"), py::arg("measure"));

  py::class_<ValuationSpec>(m, "ValuationSpec")
      .def_static(
          "phi_form",
          [](const std::vector<std::pair<int, ScalarFunction>>& comps, double delta) {
            PhiForm f;
            for (const auto& [k, phi] : comps) f.components.push_back({k, phi});
            return ValuationSpec{std::move(f), delta};
          },
          py::arg("components"), py::arg("delta"))
      .def_static(
          "nu_form",
          [](const std::vector<std::pair<int, LevelMeasure>>& comps, double delta) {
            NuForm f;
            for (const auto& [k, nu] : comps) f.components.push_back({k, nu});
            return ValuationSpec{std::move(f), delta};
          },
          py::arg("components"), py::arg("delta"))
      .def_static("from_json", [](const std::string& s) { return parse_valuation(Json::parse(s)); })
      .def_property_readonly("is_phi", &ValuationSpec::is_phi)
      .def_readonly("delta", &ValuationSpec::delta)
      .def("to_json", [](const ValuationSpec& v) { return to_json(v).dump(); });

  m.def("validate_spec", [](const ValuationSpec& s) {
    const AdmissibilityReport r = validate_spec(s);
    py::dict d;
    d["well_defined"] = r.well_defined;
    d["continuous"] = r.continuous;
    d["monotone"] = r.monotone;
    d["negative_part_vanishes"] = r.negative_part_vanishes;
    d["notes"] = r.notes;
    return d;
  });
  m.def(
      "evaluate_phi_form",
      [](const ValuationSpec& s, const QCFunction& f, int refinement, bool enforce) {
        return evaluate_phi_form(s, f, {refinement, enforce});
      },
      py::arg("spec"), py::arg("f"), py::arg("refinement") = 12, py::arg("enforce_admissibility") = true);
  m.def("evaluate_nu_form", [](const ValuationSpec& s, const QCFunction& f) { return evaluate_nu_form(s, f); });
  m.def("evaluate", [](const ValuationSpec& s, const QCFunction& f) { return evaluate(s, f); });
  m.def("phi_to_nu", &phi_to_nu);
  m.def("nu_to_phi", &nu_to_phi);
  m.def("convert_to_nu", [](const ValuationSpec& s) {
    SignedNuForm n = convert_to_nu(s);
    return std::make_pair(n.positive, n.negative);
  });
  m.def("convert_to_phi", &convert_to_phi);
  m.def(
      "layer_cake",
      [](const ScalarFunction& phi, const QCFunction& f, std::size_t samples, std::uint64_t seed) {
        const LayerCakeResult r = layer_cake(phi, f, samples, seed);
        py::dict d;
        d["integral"] = r.integral;
        d["standard_error"] = r.standard_error;
        d["measure_value"] = r.measure_value;
        d["gap"] = r.gap;
        return d;
      },
      py::arg("phi"), py::arg("f"), py::arg("samples"), py::arg("seed") = 0);

  m.def(
      "divergence_trace",
      [](int k, int n, const ScalarFunction& phi, double t_min, int depth) {
        const DivergenceWitness w = divergence_witness(k, n, phi, t_min);
        const DivergenceTrace t = divergence_trace(w, phi, depth);
        py::dict d;
        d["partial_integrals"] = t.partial_integrals;
        d["threshold_exceeded"] = t.threshold_exceeded;
        d["sustained_growth"] = t.sustained_growth;
        d["witness"] = w.function;
        return d;
      },
      py::arg("k"), py::arg("dimension"), py::arg("phi"), py::arg("t_min") = 1e-6, py::arg("depth") = 20);

  m.def(
      "check_valuation_identity",
      [](const py::object& mu, std::size_t count, std::uint64_t seed, double tol) {
        return report_dict(check_valuation_identity(wrap(mu), lattice_pairs(count, seed), tol));
      },
      py::arg("mu"), py::arg("pairs") = 50, py::arg("seed") = 0, py::arg("tolerance") = 1e-9);
  m.def(
      "check_invariance",
      [](const py::object& mu, const QCFunction& f, int motions, std::uint64_t seed, double tol) {
        return report_dict(check_invariance(wrap(mu), f, motions, seed, tol));
      },
      py::arg("mu"), py::arg("f"), py::arg("motions") = 100, py::arg("seed") = 0, py::arg("tolerance") = 1e-9);
  m.def(
      "extract_psi",
      [](const py::object& mu, int n, double t, const std::vector<double>& radii) {
        const PsiExtraction e = extract_psi(wrap(mu), n, t, radii);
        return std::make_pair(e.psi, e.condition_number);
      },
      py::arg("mu"), py::arg("dimension"), py::arg("t"), py::arg("radii"));
  m.def(
      "hadwiger_fit",
      [](const std::function<double(const ConvexBody&)>& sigma, const std::vector<ConvexBody>& sample) {
        const HadwigerFit fit = hadwiger_fit({"python", sigma, {}}, sample);
        return std::make_pair(fit.coefficients, fit.max_residual);
      },
      py::arg("sigma"), py::arg("sample"));
  m.def(
      "atomic_counterexample",
      [](int n, int depth) {
        const Counterexample c = atomic_counterexample(n, depth);
        std::vector<double> values;
        for (const auto& r : c.rows) values.push_back(r.value);
        return std::make_tuple(c.value_at_limit, values);
      },
      py::arg("dimension") = 2, py::arg("depth") = 20);
}
