#include "qcval/documents.hpp"

#include <fstream>

#include "qcval/errors.hpp"

namespace qcval {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidArgument("document " + where + ": " + what);
}

const Json& field(const Json& doc, const std::string& where, const char* name) {
  if (!doc.is_object()) fail(where, "expected an object");
  auto it = doc.find(name);
  if (it == doc.end()) fail(where + "." + name, "missing required field");
  return *it;
}

std::string sub(const std::string& where, const char* name) { return where + "." + name; }
std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

double number_field(const Json& doc, const std::string& where, const char* name) {
  return number(field(doc, where, name), sub(where, name));
}

int integer_field(const Json& doc, const std::string& where, const char* name) {
  const Json& v = field(doc, where, name);
  if (!v.is_number_integer()) fail(sub(where, name), "expected an integer");
  return v.get<int>();
}

std::string string_field(const Json& doc, const std::string& where, const char* name) {
  const Json& v = field(doc, where, name);
  if (!v.is_string()) fail(sub(where, name), "expected a string");
  return v.get<std::string>();
}

Vec vector_of(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], sub(where, i)));
  return out;
}

Vec vector_field(const Json& doc, const std::string& where, const char* name) {
  return vector_of(field(doc, where, name), sub(where, name));
}

std::vector<std::pair<double, double>> pairs_field(const Json& doc, const std::string& where, const char* name) {
  const Json& v = field(doc, where, name);
  const std::string w = sub(where, name);
  if (!v.is_array()) fail(w, "expected an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec row = vector_of(v[i], sub(w, i));
    if (row.size() != 2) fail(sub(w, i), "expected a pair");
    out.emplace_back(row[0], row[1]);
  }
  return out;
}

template <class Fn>
auto guarded(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    if (msg.find("document ") != std::string::npos) throw;
    fail(where, msg);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

void expect_kind(const Json& doc, const std::string& where, const char* kind) {
  if (doc.is_object() && doc.contains("kind")) {
    const std::string k = string_field(doc, where, "kind");
    if (k != kind) fail(sub(where, "kind"), "expected '" + std::string(kind) + "', got '" + k + "'");
  }
}

Json pairs_json(const std::vector<double>& a, const std::vector<double>& b) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({a[i], b[i]});
  return out;
}

}  // namespace

Json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open document '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("document '" + path + "' is not valid JSON: " + e.what());
  }
}

ConvexBody parse_body(const Json& doc, const std::string& where) {
  expect_kind(doc, where, "body");
  const std::string shape = string_field(doc, where, "shape");
  return guarded(where, [&]() -> ConvexBody {
    if (shape == "empty") return ConvexBody::empty(integer_field(doc, where, "dimension"));
    if (shape == "point") return ConvexBody::point(vector_field(doc, where, "coords"));
    if (shape == "segment") return ConvexBody::segment(vector_field(doc, where, "a"), vector_field(doc, where, "b"));
    if (shape == "ball") return ConvexBody::ball(vector_field(doc, where, "center"), number_field(doc, where, "radius"));
    if (shape == "box") return ConvexBody::box(vector_field(doc, where, "lower"), vector_field(doc, where, "upper"));
    if (shape == "polygon") {
      const Json& v = field(doc, where, "vertices");
      const std::string w = sub(where, "vertices");
      if (!v.is_array()) fail(w, "expected an array of points");
      std::vector<Vec2> pts;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec p = vector_of(v[i], sub(w, i));
        if (p.size() != 2) fail(sub(w, i), "expected 2 coordinates");
        pts.push_back({p[0], p[1]});
      }
      return ConvexBody::polygon(pts);
    }
    if (shape == "polytope") {
      const Json& v = field(doc, where, "points");
      const std::string w = sub(where, "points");
      if (!v.is_array()) fail(w, "expected an array of points");
      std::vector<Vec3> pts;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec p = vector_of(v[i], sub(w, i));
        if (p.size() != 3) fail(sub(w, i), "expected 3 coordinates");
        pts.push_back({p[0], p[1], p[2]});
      }
      return ConvexBody::polytope(pts);
    }
    fail(sub(where, "shape"), "unknown shape '" + shape + "'");
  });
}

Json to_json(const ConvexBody& body) {
  Json out = Json::object();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EmptyShape>) {
          out["shape"] = "empty";
          out["dimension"] = body.ambient_dimension();
        } else if constexpr (std::is_same_v<T, PointShape>) {
          out["shape"] = "point";
          out["coords"] = s.coords;
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          out["shape"] = "segment";
          out["a"] = s.a;
          out["b"] = s.b;
        } else if constexpr (std::is_same_v<T, BallShape>) {
          out["shape"] = "ball";
          out["center"] = s.center;
          out["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          out["shape"] = "box";
          out["lower"] = s.lower;
          out["upper"] = s.upper;
        } else if constexpr (std::is_same_v<T, PolygonShape>) {
          out["shape"] = "polygon";
          out["vertices"] = s.vertices;
        } else {
          out["shape"] = "polytope";
          out["points"] = s.vertices;
        }
      },
      body.shape());
  return out;
}

ScalarFunction parse_scalar_function(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  return guarded(where, [&]() -> ScalarFunction {
    if (doc.contains("table")) return ScalarFunction::table(pairs_field(doc, where, "table"));
    if (doc.contains("power"))
      return ScalarFunction::power(number_field(doc, where, "power"),
                                   doc.contains("scale") ? number_field(doc, where, "scale") : 1.0);
    if (doc.contains("truncated_linear")) {
      const Json& t = doc["truncated_linear"];
      const std::string w = sub(where, "truncated_linear");
      return ScalarFunction::truncated_linear(number_field(t, w, "delta"),
                                              t.contains("slope") ? number_field(t, w, "slope") : 1.0);
    }
    if (doc.contains("constant")) return ScalarFunction::constant(number_field(doc, where, "constant"));
    fail(where, "expected one of 'table', 'power', 'truncated_linear', 'constant'");
  });
}

Json to_json(const ScalarFunction& phi) {
  switch (phi.kind()) {
    case ScalarFunction::Kind::Table:
      return {{"table", pairs_json(phi.knots(), phi.values())}};
    case ScalarFunction::Kind::Power:
      return {{"power", phi.exponent()}, {"scale", phi.coefficient()}};
    case ScalarFunction::Kind::TruncatedLinear:
      return {{"truncated_linear", {{"delta", phi.cutoff()}, {"slope", phi.coefficient()}}}};
    case ScalarFunction::Kind::Constant:
      break;
  }
  return {{"constant", phi.coefficient()}};
}

LevelMeasure parse_level_measure(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  return guarded(where, [&]() -> LevelMeasure {
    if (doc.contains("atoms")) {
      std::vector<Atom> atoms;
      for (auto [t, m] : pairs_field(doc, where, "atoms")) atoms.push_back({t, m});
      return LevelMeasure::atomic(std::move(atoms));
    }
    if (doc.contains("density")) {
      const Json& d = doc["density"];
      const std::string w = sub(where, "density");
      return LevelMeasure::density(vector_field(d, w, "knots"), vector_field(d, w, "values"));
    }
    fail(where, "expected 'atoms' or 'density'");
  });
}

Json to_json(const LevelMeasure& nu) {
  if (nu.is_atomic_representation()) {
    Json atoms = Json::array();
    for (const Atom& a : nu.atomic_part().atoms) atoms.push_back({a.location, a.mass});
    return {{"atoms", atoms}};
  }
  const auto& g = nu.density_part();
  return {{"density", {{"knots", g.knots}, {"values", g.densities}}}};
}

QCFunction parse_function(const Json& doc, const std::string& where) {
  const std::string kind = string_field(doc, where, "kind");
  QCFunction f = guarded(where, [&]() -> QCFunction {
    if (kind == "zero") return QCFunction::zero(integer_field(doc, where, "dimension"));
    if (kind == "indicator")
      return QCFunction::indicator(number_field(doc, where, "s"),
                                   parse_body(field(doc, where, "body"), sub(where, "body")));
    if (kind == "simple") {
      const Vec levels = vector_field(doc, where, "levels");
      const Json& b = field(doc, where, "bodies");
      const std::string w = sub(where, "bodies");
      if (!b.is_array()) fail(w, "expected an array of bodies");
      std::vector<ConvexBody> bodies;
      for (std::size_t i = 0; i < b.size(); ++i) bodies.push_back(parse_body(b[i], sub(w, i)));
      return QCFunction::simple(levels, std::move(bodies));
    }
    if (kind == "radial") {
      const auto table = pairs_field(doc, where, "profile");
      return QCFunction::radial(vector_field(doc, where, "center"), table);
    }
    if (kind == "cone")
      return QCFunction::cone(vector_field(doc, where, "center"), number_field(doc, where, "height"),
                              number_field(doc, where, "radius"));
    if (kind == "gaussian")
      return QCFunction::gaussian(vector_field(doc, where, "center"), number_field(doc, where, "height"),
                                  number_field(doc, where, "width"));
    fail(sub(where, "kind"), "unknown function kind '" + kind + "'");
  });
  if (doc.contains("truncate")) f = guarded(where, [&] { return truncate(f, number_field(doc, where, "truncate")); });
  return f;
}

Json to_json(const QCFunction& f) {
  Json out;
  if (const auto* p = std::get_if<RadialProfile>(&f.rule())) {
    if (p->kind == RadialProfile::Kind::Gaussian) {
      out["kind"] = "gaussian";
      out["center"] = p->center;
      out["height"] = p->height;
      out["width"] = p->width;
    } else {
      out["kind"] = "radial";
      out["center"] = p->center;
      out["profile"] = pairs_json(p->radii, p->values);
    }
    if (std::isfinite(p->cutoff) && (p->kind == RadialProfile::Kind::Gaussian || p->cutoff < p->radii.back()))
      out["truncate"] = p->cutoff;
    return out;
  }
  if (const auto* ind = std::get_if<ScaledIndicator>(&f.rule())) {
    out["kind"] = "indicator";
    out["s"] = ind->s;
    out["body"] = to_json(ind->body);
    return out;
  }
  const SimpleFunction s = f.as_simple();
  if (s.levels.empty()) {
    out["kind"] = "zero";
    out["dimension"] = f.dimension();
    return out;
  }
  out["kind"] = "simple";
  out["levels"] = s.levels;
  out["bodies"] = Json::array();
  for (const ConvexBody& b : s.bodies) out["bodies"].push_back(to_json(b));
  return out;
}

ValuationSpec parse_valuation(const Json& doc, const std::string& where) {
  expect_kind(doc, where, "valuation");
  const std::string form = string_field(doc, where, "form");
  if (form != "phi" && form != "nu") fail(sub(where, "form"), "expected 'phi' or 'nu'");
  const double delta = doc.contains("delta") ? number_field(doc, where, "delta") : 0.0;
  const Json& comps = field(doc, where, "components");
  const std::string w = sub(where, "components");
  if (!comps.is_array()) fail(w, "expected an array");
  if (form == "phi") {
    PhiForm phi;
    for (std::size_t i = 0; i < comps.size(); ++i)
      phi.components.push_back({integer_field(comps[i], sub(w, i), "k"), parse_scalar_function(comps[i], sub(w, i))});
    return {std::move(phi), delta};
  }
  NuForm nu;
  for (std::size_t i = 0; i < comps.size(); ++i)
    nu.components.push_back({integer_field(comps[i], sub(w, i), "k"), parse_level_measure(comps[i], sub(w, i))});
  return {std::move(nu), delta};
}

Json to_json(const ValuationSpec& spec) {
  Json out{{"kind", "valuation"}, {"delta", spec.delta}};
  Json comps = Json::array();
  if (spec.is_phi()) {
    out["form"] = "phi";
    for (const PhiComponent& c : spec.phi().components) {
      Json j = to_json(c.phi);
      j["k"] = c.k;
      comps.push_back(j);
    }
  } else {
    out["form"] = "nu";
    for (const NuComponent& c : spec.nu().components) {
      Json j = to_json(c.nu);
      j["k"] = c.k;
      comps.push_back(j);
    }
  }
  out["components"] = comps;
  return out;
}

Json to_json(const CheckReport& r) {
  return {{"name", r.name},         {"residual", r.max_residual}, {"tolerance", r.tolerance},
          {"passed", r.passed},     {"witnesses", r.witnesses},   {"notes", r.notes},
          {"evaluated", r.evaluated}, {"skipped", r.skipped}};
}

}  // namespace qcval
