#pragma once

// JSON documents for bodies, functions, valuations and check reports.
// Schema violations raise InvalidArgument naming the offending path.

#include <string>

#include "json.hpp"
#include "qcval/analysis.hpp"
#include "qcval/geometry.hpp"
#include "qcval/quasiconcave.hpp"
#include "qcval/valuations.hpp"

namespace qcval {

using Json = nlohmann::json;

/// Reads and parses a JSON file.
Json load_document(const std::string& path);

/// {"shape": "ball", "center": [...], "radius": r}; shapes point, segment,
/// ball, box, polygon, polytope, empty. An optional "kind" must be "body".
ConvexBody parse_body(const Json& doc, const std::string& where = "$");
Json to_json(const ConvexBody& body);

/// Piecewise-linear {"table": [[t, v], ...]} or one of {"power": p, "scale": a},
/// {"truncated_linear": {"delta": d, "slope": s}}, {"constant": c}.
ScalarFunction parse_scalar_function(const Json& doc, const std::string& where = "$");
Json to_json(const ScalarFunction& phi);

/// {"atoms": [[t, m], ...]} or {"density": {"knots": [...], "values": [...]}}.
LevelMeasure parse_level_measure(const Json& doc, const std::string& where = "$");
Json to_json(const LevelMeasure& nu);

/// {"kind": "simple", "levels": [...], "bodies": [...]},
/// {"kind": "indicator", "s": s, "body": {...}},
/// {"kind": "radial", "center": [...], "profile": [[r, w], ...]},
/// plus "cone", "gaussian" and "zero". An optional "truncate": R cuts radial
/// profiles to a ball.
QCFunction parse_function(const Json& doc, const std::string& where = "$");
Json to_json(const QCFunction& f);

/// {"form": "phi"|"nu", "delta": d,
///  "components": [{"k": 2, "table": [[t, v], ...]}, ...]}; nu components
/// carry "atoms" or "density". An optional "kind" must be "valuation".
ValuationSpec parse_valuation(const Json& doc, const std::string& where = "$");
Json to_json(const ValuationSpec& spec);

/// {name, residual, tolerance, passed, witnesses, notes}.
Json to_json(const CheckReport& report);

}  // namespace qcval
