#pragma once

// Property checks for valuations given as black boxes, and the coefficient
// extraction procedures (Hadwiger fit on bodies, psi_k on functions).

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcval/quasiconcave.hpp"
#include "qcval/valuations.hpp"

namespace qcval {

struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  /// Per-step values for sequence checks (continuity).
  std::vector<double> sequence;

  /// Sets `passed` from the residual and tolerance.
  void finalize() { passed = max_residual <= tolerance; }
};

struct ValuationProperties {
  bool invariant = true;
  bool continuous = true;
  bool monotone = false;
  bool simple = false;
};

struct BlackBoxValuation {
  std::string name;
  std::function<double(const QCFunction&)> fn;
  ValuationProperties properties;

  double operator()(const QCFunction& f) const { return fn(f); }
};

struct BodyValuation {
  std::string name;
  std::function<double(const ConvexBody&)> fn;
  ValuationProperties properties;

  double operator()(const ConvexBody& k) const { return fn(k); }
};

/// Wraps a spec; phi-forms honour `enforce_admissibility`.
BlackBoxValuation from_spec(std::string name, ValuationSpec spec, bool enforce_admissibility = true);

/// (int f dx)^2: invariant but not a valuation.
BlackBoxValuation planted_squared_integral();

/// x-coordinate of the centre of the bounding box of supp(f): a valuation-free
/// functional that is not translation invariant.
BlackBoxValuation planted_centroid_x();

/// K -> mu(t I_K).
BodyValuation sigma_t(BlackBoxValuation mu, double t);

/// K -> sum_i c_i V_i(K).
BodyValuation intrinsic_combination(std::vector<double> coefficients);

using FunctionPair = std::pair<QCFunction, QCFunction>;

/// Residuals |mu(f) + mu(g) - mu(f v g) - mu(f ^ g)|. Pairs whose lattice
/// operations leave the class are skipped with a note.
CheckReport check_valuation_identity(const BlackBoxValuation& mu, std::span<const FunctionPair> pairs,
                                     double tolerance = 1e-9);

/// Residuals |mu(f) - mu(f o T)| / max(1, |mu(f)|) over the given motions.
CheckReport check_invariance(const BlackBoxValuation& mu, const QCFunction& f, std::span<const RigidMotion> motions,
                             double tolerance = 1e-9);

/// Same over `motions` seeded random proper motions.
CheckReport check_invariance(const BlackBoxValuation& mu, const QCFunction& f, int motions, std::uint64_t seed,
                             double tolerance = 1e-9, double translation_scale = 5.0);

enum class ContinuityMode {
  IncreasingDyadic,      ///< f_i = dyadic approximation of depth i
  DecreasingTruncation,  ///< f_i = (1 + 2^-i) f
  IncreasingScaling,     ///< f_i = (1 - 1/i) f
  Constant,              ///< f_i = f
};

const char* to_string(ContinuityMode mode);

/// Evaluates mu(f_1..f_depth); the residual is |mu(f_depth) - mu(f)|.
CheckReport check_continuity(const BlackBoxValuation& mu, const QCFunction& f, ContinuityMode mode, int depth,
                             double tolerance = 1e-3);

struct PsiExtraction {
  std::vector<double> psi;  ///< psi_0(t)..psi_N(t)
  double condition_number = 0.0;
};

/// Solves mu(t I_{rB}) = sum_j r^j V_j(B) psi_j(t) for psi_j(t) from probes at
/// N + 1 radii, B the unit ball of R^N.
PsiExtraction extract_psi(const BlackBoxValuation& mu, int dimension, double t, std::span<const double> radii,
                          double max_condition = 1e10);

struct HadwigerFit {
  std::vector<double> coefficients;  ///< c_0..c_N
  std::vector<double> residuals;     ///< per sample body
  double max_residual = 0.0;
  bool nonnegative = true;
};

/// Least-squares fit sigma(K) ~ sum_i c_i V_i(K).
HadwigerFit hadwiger_fit(const BodyValuation& sigma, std::span<const ConvexBody> sample);

struct CounterexampleRow {
  int step = 0;
  double scale = 0.0;
  double value = 0.0;
};

struct Counterexample {
  std::vector<CounterexampleRow> rows;
  double value_at_limit = 0.0;  ///< mu(f)
  double sequence_limit = 0.0;  ///< last entry of the sequence
};

/// The nu-form V_N(L_{t0}(f)) on f = t0 I_{B_1} and f_i = (1 - 1/i) f.
Counterexample atomic_counterexample(int dimension, int depth = 20, double t0 = 1.0);

/// Uniformly random rotation (Haar) and a translation in [-scale, scale]^N.
RigidMotion random_rigid_motion(int dimension, std::mt19937_64& rng, double translation_scale = 5.0);

}  // namespace qcval
