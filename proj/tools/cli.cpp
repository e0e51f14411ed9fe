#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qcval/analysis.hpp"
#include "qcval/documents.hpp"
#include "qcval/errors.hpp"
#include "qcval/fixtures.hpp"
#include "qcval/level_measures.hpp"
#include "qcval/steiner.hpp"
#include "qcval/valuations.hpp"

namespace qcval::cli {
namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 200000;
  int refinement = 12;
  double tolerance = 1e-9;
  std::string out;
  std::vector<std::string> inputs;

  int k = -1;
  std::vector<double> grid;
  std::vector<double> radii;
  std::string mode = "hadwiger";
  std::string planted;
  double t = 1.0;
  int dimension = 2;
  int depth = 20;
  std::size_t pairs = 50;
  int motions = 100;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_inputs(const RunConfig& cfg, std::size_t n, const char* usage) {
  if (cfg.inputs.size() != n) throw InvalidArgument(std::string("expected ") + usage);
}

Json load(const std::string& path) { return load_document(path); }

template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  const Json doc = load(path);
  try {
    return parse(doc);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void header(std::ostream& os, const std::string& command, const RunConfig& cfg) {
  os << "# command=" << command << "\n";
  os << "# seed=" << cfg.seed << "\n";
  os << "# samples=" << cfg.samples << "\n";
  os << "# refinement=" << cfg.refinement << "\n";
  for (const auto& in : cfg.inputs) os << "# input=" << in << "\n";
}

int cmd_volumes(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 1, "one body document");
  const ConvexBody body = parse_file(cfg.inputs[0], [](const Json& d) { return parse_body(d); });
  const std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  const IntrinsicVolumeVector exact = intrinsic_volumes(body);
  const SteinerEstimate est = steiner_fit_oracle(body, eps, cfg.samples, cfg.seed);
  header(os, "volumes", cfg);
  os << "# epsilons=0.1,0.2,0.4,0.8\n";
  os << "# steiner_condition=" << num(est.condition_number) << "\n";
  os << "method";
  for (std::size_t k = 0; k < exact.size(); ++k) os << ",V" << k;
  os << "\n";
  auto row = [&](const char* tag, const std::vector<double>& v) {
    os << tag;
    for (double x : v) os << "," << num(x);
    os << "\n";
  };
  row("exact", exact.values);
  row("mc", est.values);
  row("mc_se", est.standard_errors);
  return 0;
}

int cmd_profile(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 1, "one function document");
  const QCFunction f = parse_file(cfg.inputs[0], [](const Json& d) { return parse_function(d); });
  const int k = cfg.k < 0 ? f.dimension() : cfg.k;
  std::vector<double> grid = cfg.grid;
  if (grid.empty()) {
    const double top = max_value(f);
    for (int j = 1; j <= 20; ++j) grid.push_back(top * j / 20.0);
  }
  const ProfileTable p = profile(f, k, grid);
  header(os, "profile", cfg);
  os << "# k=" << k << "\n";
  os << "t,value,method\n";
  for (std::size_t j = 0; j < p.knots.size(); ++j) os << num(p.knots[j]) << "," << num(p.values[j]) << ",exact\n";
  return 0;
}

int cmd_measure(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 1, "one function document");
  const QCFunction f = parse_file(cfg.inputs[0], [](const Json& d) { return parse_function(d); });
  const int k = cfg.k < 0 ? f.dimension() : cfg.k;
  const LevelMeasure m = sk_measure(f, k, cfg.refinement);
  const char* tag = f.is_radial() ? "quadrature" : "exact";
  header(os, "measure", cfg);
  os << "# k=" << k << "\n";
  if (f.is_radial()) os << "# dyadic_depth=" << cfg.refinement << "\n";
  os << "t,mass,method\n";
  for (const Atom& a : m.atomic_part().atoms) os << num(a.location) << "," << num(a.mass) << "," << tag << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 2, "a valuation document and a function document");
  const ValuationSpec spec = parse_file(cfg.inputs[0], [](const Json& d) { return parse_valuation(d); });
  const QCFunction f = parse_file(cfg.inputs[1], [](const Json& d) { return parse_function(d); });
  const char* method = f.is_radial() ? "quadrature" : "exact";
  std::string phi_value, phi_method, nu_value, nu_method, note;
  // Inadmissible specs are still evaluated on bounded-support input; the
  // verdict goes into the header.
  const AdmissibilityReport adm = validate_spec(spec);
  PhiEvaluationOptions opt;
  opt.refinement = cfg.refinement;
  opt.enforce_admissibility = false;
  if (spec.is_phi()) {
    phi_value = num(evaluate_phi_form(spec, f, opt));
    phi_method = method;
    try {
      nu_value = num(evaluate(convert_to_nu(spec), f));
      nu_method = method;
    } catch (const UnsupportedRepresentation& e) {
      note = e.what();
    }
  } else {
    nu_value = num(evaluate_nu_form(spec, f));
    nu_method = method;
    try {
      const ValuationSpec phi = convert_to_phi(spec);
      phi_value = num(evaluate_phi_form(phi, f, opt));
      phi_method = method;
    } catch (const Error& e) {
      note = e.what();
    }
  }
  header(os, "evaluate", cfg);
  os << "# well_defined=" << (adm.well_defined ? "true" : "false") << "\n";
  for (const auto& n : adm.notes) os << "# admissibility: " << n << "\n";
  if (!note.empty()) os << "# not convertible: " << note << "\n";
  os << "phi,phi_method,nu,nu_method\n";
  os << phi_value << "," << phi_method << "," << nu_value << "," << nu_method << "\n";
  return 0;
}

int cmd_convert(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 1, "one valuation document");
  const ValuationSpec spec = parse_file(cfg.inputs[0], [](const Json& d) { return parse_valuation(d); });
  Json out;
  if (spec.is_phi()) {
    const SignedNuForm s = convert_to_nu(spec);
    out = {{"kind", "signed_valuation"}, {"positive", to_json(s.positive)}, {"negative", to_json(s.negative)}};
  } else {
    out = to_json(convert_to_phi(spec));
  }
  os << out.dump(2) << "\n";
  return 0;
}

int cmd_layercake(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 2, "a scalar-function document and a function document");
  const ScalarFunction phi = parse_file(cfg.inputs[0], [](const Json& d) { return parse_scalar_function(d); });
  const QCFunction f = parse_file(cfg.inputs[1], [](const Json& d) { return parse_function(d); });
  const LayerCakeResult r = layer_cake(phi, f, cfg.samples, cfg.seed, cfg.refinement);
  header(os, "layercake", cfg);
  os << "integral_mc,integral_mc_se,measure_" << (f.is_radial() ? "quadrature" : "exact") << ",gap,gap_over_se\n";
  os << num(r.integral) << "," << num(r.standard_error) << "," << num(r.measure_value) << "," << num(r.gap) << ","
     << num(r.standard_error > 0 ? r.gap / r.standard_error : 0.0) << "\n";
  return 0;
}

BlackBoxValuation check_subject(const RunConfig& cfg) {
  if (cfg.planted == "non-valuation") return planted_squared_integral();
  if (cfg.planted == "non-invariant") return planted_centroid_x();
  if (!cfg.planted.empty()) throw InvalidArgument("unknown planted fixture '" + cfg.planted + "'");
  require_inputs(cfg, 1, "one valuation document (or --planted)");
  ValuationSpec spec = parse_file(cfg.inputs[0], [](const Json& d) { return parse_valuation(d); });
  return from_spec(cfg.inputs[0], std::move(spec));
}

int cmd_check(const RunConfig& cfg, std::ostream& os) {
  const BlackBoxValuation mu = check_subject(cfg);
  std::vector<CheckReport> reports;
  const auto pairs = lattice_pairs(cfg.pairs, cfg.seed);
  reports.push_back(check_valuation_identity(mu, pairs, cfg.tolerance));
  const auto fs = random_polygon_functions(3, cfg.seed + 1);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CheckReport r = check_invariance(mu, fs[i], cfg.motions, cfg.seed + 2 + i, cfg.tolerance);
    r.name += "#" + std::to_string(i);
    reports.push_back(std::move(r));
  }
  bool passed = true;
  Json doc{{"kind", "check_suite"}, {"seed", cfg.seed}, {"pairs", cfg.pairs}, {"motions", cfg.motions}};
  doc["reports"] = Json::array();
  for (const CheckReport& r : reports) {
    passed = passed && r.passed;
    doc["reports"].push_back(to_json(r));
  }
  doc["passed"] = passed;
  os << doc.dump(2) << "\n";
  return passed ? 0 : 1;
}

std::vector<ConvexBody> fit_sample(int n) {
  std::vector<ConvexBody> s;
  const Vec o(n, 0.0);
  for (double r : {1.0, 2.0, 3.0}) s.push_back(ConvexBody::ball(o, r));
  Vec hi(n, 1.0);
  for (int j = 0; j < n; ++j) {
    hi[j] = 2.0 + j;
    s.push_back(ConvexBody::box(o, hi));
  }
  Vec b(n, 0.0);
  b[0] = 1.5;
  s.push_back(ConvexBody::segment(o, b));
  s.push_back(ConvexBody::point(o));
  return s;
}

int cmd_fit(const RunConfig& cfg, std::ostream& os) {
  require_inputs(cfg, 1, "one valuation document");
  const ValuationSpec spec = parse_file(cfg.inputs[0], [](const Json& d) { return parse_valuation(d); });
  const BlackBoxValuation mu = from_spec(cfg.inputs[0], spec, false);
  const int n = cfg.dimension;
  header(os, "fit", cfg);
  if (cfg.mode == "hadwiger") {
    const std::vector<ConvexBody> sample = fit_sample(n);
    const HadwigerFit fit = hadwiger_fit(sigma_t(mu, cfg.t), sample);
    os << "# t=" << num(cfg.t) << "\n# max_residual=" << num(fit.max_residual) << "\n";
    os << "# nonnegative=" << (fit.nonnegative ? "true" : "false") << "\n";
    os << "i,coefficient,method\n";
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
      os << i << "," << num(fit.coefficients[i]) << ",exact\n";
    return 0;
  }
  if (cfg.mode == "psi") {
    std::vector<double> radii = cfg.radii;
    if (radii.empty())
      for (int j = 0; j <= n; ++j) radii.push_back(std::ldexp(1.0, j));
    std::vector<double> grid = cfg.grid;
    if (grid.empty())
      for (int j = 0; j <= 20; ++j) grid.push_back(0.1 * j);
    os << "t";
    for (int j = 0; j <= n; ++j) os << ",psi" << j;
    os << ",condition,method\n";
    for (double t : grid) {
      const PsiExtraction e = extract_psi(mu, n, t, radii);
      os << num(t);
      for (double v : e.psi) os << "," << num(v);
      os << "," << num(e.condition_number) << ",exact\n";
    }
    return 0;
  }
  throw InvalidArgument("unknown fit mode '" + cfg.mode + "' (expected hadwiger or psi)");
}

int cmd_counterexample(const RunConfig& cfg, std::ostream& os) {
  const Counterexample c = atomic_counterexample(cfg.dimension, cfg.depth, cfg.t);
  header(os, "counterexample", cfg);
  os << "# mu(f)=" << num(c.value_at_limit) << "\n";
  os << "# lim mu(f_i)=" << num(c.sequence_limit) << "\n";
  os << "i,scale,value,method\n";
  for (const CounterexampleRow& r : c.rows) os << r.step << "," << num(r.scale) << "," << num(r.value) << ",exact\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valuations on quasi-concave functions"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte-Carlo samples")->capture_default_str();
  app.add_option("--refinement", cfg.refinement, "Dyadic refinement depth")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Check tolerance")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.fallthrough();

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"volumes", "Intrinsic volumes with the Steiner-fit oracle", cmd_volumes},
      {"profile", "Profile t -> V_k(L_t f)", cmd_profile},
      {"measure", "Atoms of S_k(f; .)", cmd_measure},
      {"evaluate", "Valuation value in both forms", cmd_evaluate},
      {"convert", "Convert between phi- and nu-forms", cmd_convert},
      {"layercake", "Both sides of the layer-cake identity", cmd_layercake},
      {"check", "Property suite for a valuation", cmd_check},
      {"fit", "Hadwiger coefficients or psi_k extraction", cmd_fit},
      {"counterexample", "Discontinuity of an atomic nu-form", cmd_counterexample},
  };
  for (const Command& c : commands) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->add_option("inputs", cfg.inputs, "Input documents");
    if (std::string(c.name) == "profile" || std::string(c.name) == "measure")
      s->add_option("--k", cfg.k, "Intrinsic volume index (default N)");
    if (std::string(c.name) == "profile" || std::string(c.name) == "fit")
      s->add_option("--grid", cfg.grid, "Levels t")->delimiter(',');
    if (std::string(c.name) == "fit") {
      s->add_option("--mode", cfg.mode, "hadwiger or psi")->capture_default_str();
      s->add_option("--radii", cfg.radii, "Probe radii for psi")->delimiter(',');
    }
    if (std::string(c.name) == "fit" || std::string(c.name) == "counterexample") {
      s->add_option("--t", cfg.t, "Level t (fit) or atom location (counterexample)")->capture_default_str();
      s->add_option("--dimension", cfg.dimension, "Ambient dimension")->capture_default_str();
    }
    if (std::string(c.name) == "counterexample") s->add_option("--depth", cfg.depth)->capture_default_str();
    if (std::string(c.name) == "check") {
      s->add_option("--planted", cfg.planted, "non-valuation or non-invariant");
      s->add_option("--pairs", cfg.pairs)->capture_default_str();
      s->add_option("--motions", cfg.motions)->capture_default_str();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Command* chosen = nullptr;
  for (const Command& c : commands)
    if (app.got_subcommand(c.name)) chosen = &c;

  std::ostringstream buffer;
  int status = 0;
  try {
    status = chosen->fn(cfg, buffer);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return 2;
    }
    file << buffer.str();
  }
  return status;
}

}  // namespace qcval::cli
