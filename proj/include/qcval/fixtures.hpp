#pragma once

// Seeded inputs for the property checks: lattice pairs whose level unions
// stay convex, random nested-polygon simple functions and a catalog of
// admissible valuations.

#include <cstdint>
#include <random>
#include <vector>

#include "qcval/analysis.hpp"

namespace qcval {

/// Pairs of simple functions whose level-wise unions are convex: strip boxes
/// sharing all but one side range (R^2 and R^3), and scaled copies of one
/// polygon or concentric disks.
std::vector<FunctionPair> lattice_pairs(std::size_t count, std::uint64_t seed);

/// Random convex polygon containing the origin.
ConvexBody random_polygon(std::mt19937_64& rng, int corners = 7, double radius = 2.0);

/// Simple function in R^2 whose bodies are polygons, each cut from the
/// previous one by a random box.
QCFunction random_polygon_function(std::mt19937_64& rng, int levels = 4);

std::vector<QCFunction> random_polygon_functions(std::size_t count, std::uint64_t seed, int levels = 4);

/// Admissible phi-forms in R^N (cutoff 0.25).
std::vector<ValuationSpec> planted_phi_forms(int dimension);

/// nu-forms in R^N (cutoff 0.25), mixing atoms and densities.
std::vector<ValuationSpec> planted_nu_forms(int dimension);

/// Piecewise-linear phi tables vanishing on [0, 0.25].
std::vector<ScalarFunction> piecewise_linear_phis();

}  // namespace qcval
