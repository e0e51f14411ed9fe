#pragma once

// Integral valuations on quasi-concave functions in the two equivalent
// forms
//   mu(f) = sum_k  int phi_k(t) dS_k(f; t)          (phi-form)
//   mu(f) = sum_k  int V_k(L_t(f)) dnu_k(t)          (nu-form)
// with their admissibility conditions and the integration-by-parts bridge.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcval/level_measures.hpp"
#include "qcval/quasiconcave.hpp"
#include "qcval/scalar_function.hpp"

namespace qcval {

struct PhiComponent {
  int k = 0;
  ScalarFunction phi = ScalarFunction::zero();
};

struct NuComponent {
  int k = 0;
  LevelMeasure nu = LevelMeasure::zero();
};

struct PhiForm {
  std::vector<PhiComponent> components;
};

struct NuForm {
  std::vector<NuComponent> components;
};

/// A valuation given by one of the two forms. `delta` is the cutoff the
/// k >= 1 components must respect.
struct ValuationSpec {
  std::variant<PhiForm, NuForm> form;
  double delta = 0.0;

  bool is_phi() const { return std::holds_alternative<PhiForm>(form); }
  const PhiForm& phi() const { return std::get<PhiForm>(form); }
  const NuForm& nu() const { return std::get<NuForm>(form); }
};

struct AdmissibilityReport {
  bool well_defined = true;
  bool continuous = true;
  bool monotone = true;
  /// phi-form only: every phi_k^- also vanishes near 0 (k >= 1).
  bool negative_part_vanishes = true;
  std::vector<std::string> notes;
};

AdmissibilityReport validate_spec(const ValuationSpec& spec);

struct PhiEvaluationOptions {
  int refinement = 12;
  /// Reject specs that fail the cutoff condition. Bounded-support functions
  /// still give finite values without it.
  bool enforce_admissibility = true;
};

/// Sum_k int phi_k dS_k(f); exact for simple f, dyadic for radial f.
double evaluate_phi_form(const ValuationSpec& spec, const QCFunction& f, const PhiEvaluationOptions& options = {});

struct NuEvaluationOptions {
  /// Relative change at which successive midpoint refinements stop.
  double relative_tolerance = 1e-6;
  /// Maximum cells per density cell.
  std::size_t max_knots = std::size_t{1} << 20;
  /// Partial sums above this signal divergence.
  double divergence_threshold = 1e12;
};

/// Sum_k int V_k(L_t(f)) dnu_k(t). Exact for simple f and for atoms; radial f
/// against densities uses refined midpoint quadrature.
double evaluate_nu_form(const ValuationSpec& spec, const QCFunction& f, const NuEvaluationOptions& options = {});

/// Dispatches on the form.
double evaluate(const ValuationSpec& spec, const QCFunction& f);

/// Splits d(phi) = phi'(t) dt into nonnegative densities nu+ = (phi')_+ and
/// nu- = (phi')_-, so that int phi dS_k = int V_k(L_t) dnu+ - int V_k(L_t) dnu-.
std::pair<LevelMeasure, LevelMeasure> phi_to_nu(const ScalarFunction& phi);

/// phi(t) = nu([0, t]) for a piecewise-constant density with bounded support.
ScalarFunction nu_to_phi(const LevelMeasure& nu);

/// A phi-form as the difference (positive, negative) of two nu-forms.
struct SignedNuForm {
  ValuationSpec positive;
  ValuationSpec negative;
};

SignedNuForm convert_to_nu(const ValuationSpec& phi_spec);
ValuationSpec convert_to_phi(const ValuationSpec& nu_spec);

/// Value of a signed nu-form.
double evaluate(const SignedNuForm& form, const QCFunction& f);

struct LayerCakeResult {
  double integral = 0.0;        ///< Monte-Carlo estimate of int phi(f(x)) dx
  double standard_error = 0.0;  ///< of the estimate
  double measure_value = 0.0;   ///< int phi dS_N(f)
  double gap = 0.0;             ///< |integral - measure_value|
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Both sides of int phi(f(x)) dx = int phi dS_N(f). The left side samples
/// the bounding box of supp(f) uniformly.
LayerCakeResult layer_cake(const ScalarFunction& phi, const QCFunction& f, std::size_t samples, std::uint64_t seed,
                           int refinement = 12);

}  // namespace qcval
