#pragma once

// Witnesses that a phi-form without the cutoff condition is not finite:
// for phi_+ not vanishing near 0 we build f with V_k(L_t(f)) = h(t) where
// h(t) = int_t^1 ds / psi(s) and psi(t) = int_0^t phi_+.

#include <vector>

#include "qcval/quasiconcave.hpp"
#include "qcval/scalar_function.hpp"

namespace qcval {

struct DivergenceWitness {
  QCFunction function;
  int k = 1;
  double t_min = 0.0;
  std::vector<double> levels;   ///< log grid from 1 down to t_min
  std::vector<double> profile;  ///< h at each level
};

/// Radial witness in R^N, centered at the origin, tabulated down to t_min.
/// Throws PhiVanishesNearZero when phi_+ vanishes on some [0, d].
DivergenceWitness divergence_witness(int k, int dimension, const ScalarFunction& phi, double t_min = 1e-6,
                                     int points_per_decade = 40);

struct DivergenceTrace {
  std::vector<int> depths;
  std::vector<double> partial_integrals;  ///< int phi_+ dS_k(f_i) per dyadic depth
  double threshold = 1e6;
  bool threshold_exceeded = false;
  /// Smallest increment over the trailing half of the trace.
  double min_trailing_increment = 0.0;
  /// Trailing increments stay within a factor 2 of each other: growth linear
  /// in depth, hence unbounded as the depth goes to infinity.
  bool sustained_growth = false;
};

/// Partial integrals of phi_+ against the dyadic approximations of the
/// witness at depths 1..max_depth.
DivergenceTrace divergence_trace(const DivergenceWitness& witness, const ScalarFunction& phi, int max_depth = 20,
                                 double threshold = 1e6);

}  // namespace qcval
