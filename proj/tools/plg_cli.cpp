#include "plg_cli.hpp"

#include "plg/dynamics.hpp"
#include "plg/expr.hpp"
#include "plg/models.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace plg::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string model;
  std::string config;
  std::string hamiltonian;
  std::string x0;
  std::string volume = "invariant";
  std::string out;
  std::string report;
  std::string algebra = "so3";
  std::string structure;
  double eta = 0.3;
  double h = 1e-3;
  double tol = 1e-6;
  long steps = 10000;
  long stride = 1;
  int samples = 100;
  std::optional<std::uint64_t> seed;
  bool json_stdout = false;
};

// Raised for bad flag values; maps to the validation exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const RunConfig& rc) {
  if (rc.seed) return *rc.seed;
  if (const char* env = std::getenv("PLG_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("PLG_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(Vector(m.row(r).transpose())));
  return rows;
}

std::string fmt_vec(const Vector& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

ModelBundle load_bundle(const RunConfig& rc) {
  ModelBundle b;
  if (!rc.config.empty()) {
    b = from_config(rc.config);
  } else {
    if (rc.model.empty()) throw UsageError("no model given (use a model id or --config)");
    ModelOptions opts;
    opts.eta = rc.eta;
    opts.algebra = rc.algebra;
    try {
      b = builtin_model(rc.model, opts);
    } catch (const std::invalid_argument& e) {
      std::string ids;
      for (const auto& id : builtin_model_ids()) ids += (ids.empty() ? "" : ", ") + id;
      throw UsageError(std::string(e.what()) + " (known: " + ids + ")");
    }
  }
  if (!rc.structure.empty()) {
    try {
      b = with_structure(b, rc.structure);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }
  return b;
}

ScalarField resolve_hamiltonian(const ModelBundle& b, const std::string& spec) {
  if (spec.empty()) {
    if (b.hamiltonians.empty()) throw UsageError("model " + b.id + " defines no Hamiltonian; pass --H");
    return b.hamiltonians.front();
  }
  if (spec.rfind("expr:", 0) == 0) {
    const std::string text = spec.substr(5);
    Expression e;
    try {
      e = Expression::parse(text, b.chart.coordinates(), b.params);
    } catch (const ExpressionError& err) {
      throw UsageError(std::string("--H: ") + err.what());
    }
    std::vector<Expression> d;
    for (int i = 0; i < b.chart.dim(); ++i) d.push_back(e.derivative(i));
    return {text, [e](const Vector& x) { return e.evaluate(x); },
            [d](const Vector& x) {
              Vector g(static_cast<Eigen::Index>(d.size()));
              for (std::size_t i = 0; i < d.size(); ++i) g[static_cast<Eigen::Index>(i)] = d[i].evaluate(x);
              return g;
            }};
  }
  if (spec.rfind("quadratic:", 0) == 0) {
    const auto diag = parse_list(spec.substr(10), "--H quadratic");
    if (static_cast<int>(diag.size()) != b.chart.dim())
      throw UsageError("--H quadratic: expected " + std::to_string(b.chart.dim()) + " entries");
    const Vector d = Eigen::Map<const Vector>(diag.data(), static_cast<Eigen::Index>(diag.size()));
    return quadratic_hamiltonian(Matrix(d.asDiagonal()), spec);
  }
  try {
    return b.hamiltonian(spec);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

void emit(const RunConfig& rc, const json& report, const std::string& summary, std::ostream& out) {
  if (!rc.report.empty()) {
    std::ofstream f(rc.report);
    if (!f) throw UsageError("cannot write report file '" + rc.report + "'");
    f << report.dump(2) << "\n";
  }
  if (rc.json_stdout)
    out << report.dump(2) << "\n";
  else
    out << summary;
}

json morse_json(const MorseReport& m, const std::string& hamiltonian) {
  json j;
  j["hamiltonian"] = hamiltonian;
  j["gradient_at_e"] = to_json(m.gradient_at_e);
  j["hessian"] = to_json(m.hessian);
  j["eigenvalues"] = to_json(m.eigenvalues);
  j["is_critical"] = m.is_critical;
  j["is_morse"] = m.is_morse;
  j["kernel_condition"] = to_json(m.kernel_condition);
  j["kernel_norm"] = m.kernel_norm;
  j["dual_modular_character"] = to_json(m.dual_modular_character);
  j["dual_unimodular"] = m.dual_unimodular;
  j["verdict"] = m.verdict;
  return j;
}

int cmd_check(const RunConfig& rc, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(rc);
  const ModelBundle b = load_bundle(rc);
  const BundleResiduals res = validate_bundle(b, seed, rc.samples);

  json r;
  std::ostringstream s;
  s << std::setprecision(6);
  r["model"] = b.id;
  r["structure"] = b.primary_structure;
  json params = json::object();
  for (const auto& [k, v] : b.params) params[k] = v;
  r["params"] = params;
  s << "model: " << b.id << " (structure " << b.primary_structure << ")\n";

  if (b.bialgebra) {
    const UnimodularityVerdict v = pl_unimodularity(*b.bialgebra);
    r["unimodular"] = v.is_unimodular;
    r["dual_modular_character"] = to_json(v.dual_modular_character);
    r["basis_labels"] = b.bialgebra->primal().labels();
    s << "unimodular: " << (v.is_unimodular ? "true" : "false") << "\n";
    s << "dual modular character: " << fmt_vec(v.dual_modular_character) << " in basis (";
    const auto& labels = b.bialgebra->primal().labels();
    for (std::size_t i = 0; i < labels.size(); ++i) s << (i ? ", " : "") << labels[i];
    s << ")\n";
    json structures = json::array();
    structures.push_back({{"name", b.primary_structure},
                          {"unimodular", v.is_unimodular},
                          {"dual_modular_character", to_json(v.dual_modular_character)}});
    for (const auto& c : b.companions) {
      if (!c.bialgebra) continue;
      const UnimodularityVerdict cv = pl_unimodularity(*c.bialgebra);
      structures.push_back({{"name", c.name},
                            {"unimodular", cv.is_unimodular},
                            {"dual_modular_character", to_json(cv.dual_modular_character)}});
      s << "companion " << c.name << ": unimodular " << (cv.is_unimodular ? "true" : "false")
        << ", dual modular character " << fmt_vec(cv.dual_modular_character) << "\n";
    }
    r["structures"] = structures;
  } else {
    r["unimodular"] = nullptr;
    r["dual_modular_character"] = nullptr;
    s << "unimodular: unknown (no bialgebra data)\n";
  }

  r["residuals"] = {{"jacobi", res.jacobi},
                    {"antisymmetry", res.antisymmetry},
                    {"casimir", res.casimir},
                    {"cocycle", res.cocycle},
                    {"gybe", res.gybe},
                    {"cobracket", res.cobracket_mismatch},
                    {"group_identity", res.group.identity},
                    {"group_inverse", res.group.inverse},
                    {"group_associativity", res.group.associativity}};
  s << "residuals: jacobi " << res.jacobi << ", cocycle " << res.cocycle << ", gybe " << res.gybe
    << ", casimir " << res.casimir << ", cobracket " << res.cobracket_mismatch << "\n";

  Sampler sampler(seed);
  const auto pts = sampler.draw(b.sampling, 5);
  if (b.group) {
    const GroupModel& gm = *b.group;
    const VolumeForm inv = invariant_volume(gm);
    json f0s = json::array(), dens = json::array();
    s << "f0 samples:\n";
    for (const auto& p : pts) {
      json f{{"point", to_json(p)}, {"value", f0(gm, p)}};
      if (b.truth.f0) f["closed_form"] = b.truth.f0(p);
      f0s.push_back(f);
      json d{{"point", to_json(p)}, {"value", inv.density(p)}};
      if (b.truth.invariant_density) d["closed_form"] = b.truth.invariant_density(p);
      dens.push_back(d);
      s << "  " << fmt_vec(p) << " -> f0 " << f0(gm, p) << ", sqrt(f0) rho_l " << inv.density(p) << "\n";
    }
    r["f0_samples"] = f0s;
    r["invariant_density_samples"] = dens;
  }

  if (b.group && b.bialgebra && !b.hamiltonians.empty() ) {
    const ScalarField H = resolve_hamiltonian(b, rc.hamiltonian);
    const GroupModel& gm = *b.group;
    ScalarField sigma{"log_sqrt_f0", [gm](const Vector& g) { return 0.5 * std::log(f0(gm, g)); }, {}};
    Sampler tsampler(seed);
    const auto tpts = tsampler.draw(b.sampling, rc.samples);
    const TheoremResidual t = theorem_residual(gm, b.chart, *b.bialgebra, H, sigma, tpts);
    r["theorem_residual"] = {{"hamiltonian", H.name}, {"max", t.max}, {"point", to_json(t.point)}};
    s << "theorem residual for sqrt(f0) nu^l, H = " << H.name << ": " << t.max << " at "
      << fmt_vec(t.point) << "\n";
    const MorseReport m = morse_report(gm, H, *b.bialgebra);
    r["morse"] = morse_json(m, H.name);
    s << "morse (H = " << H.name << "): " << m.verdict << "\n";
  }

  const auto checks = check_ground_truth(b, seed);
  json gt = json::array();
  bool all_ok = true;
  for (const auto& c : checks) {
    gt.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
    all_ok = all_ok && c.passed();
  }
  r["ground_truth"] = gt;
  if (!checks.empty()) {
    s << "ground truth:";
    for (const auto& c : checks) s << " " << c.name << (c.passed() ? " ok" : " MISMATCH");
    s << "\n";
  }

  if (b.truth.printed_field) {
    const Vector disc = printed_field_discrepancy(b, pts);
    json comps = json::object();
    std::vector<std::string> bad;
    for (int i = 0; i < b.chart.dim(); ++i) {
      comps[b.chart.coordinates()[i]] = disc[i];
      if (disc[i] > 1e-9) bad.push_back(b.chart.coordinates()[i]);
    }
    r["printed_field"] = {{"hamiltonian", b.truth.printed_hamiltonian},
                          {"sign", b.truth.printed_sign},
                          {"discrepancy", comps},
                          {"agrees", bad.empty()}};
    if (bad.empty()) {
      s << "printed equations of motion agree with Pi#dH";
      if (b.truth.printed_sign < 0) s << " up to time reversal";
      s << "\n";
    } else {
      s << "printed equations of motion disagree with Pi#dH in components:";
      for (const auto& c : bad) s << " " << c;
      s << "\n";
    }
  }
  r["seed"] = seed;
  s << "seed: " << seed << "\n";
  emit(rc, r, s.str(), out);
  return all_ok ? kOk : kValidation;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(rc);
  const ModelBundle b = load_bundle(rc);
  const ScalarField H = resolve_hamiltonian(b, rc.hamiltonian);
  if (!(rc.h > 0.0)) throw UsageError("--h must be positive");
  if (rc.steps < 0) throw UsageError("--steps must be nonnegative");
  if (rc.stride < 1) throw UsageError("--stride must be at least 1");

  Vector x0 = b.x0;
  if (!rc.x0.empty()) {
    const auto v = parse_list(rc.x0, "--x0");
    if (static_cast<int>(v.size()) != b.chart.dim())
      throw UsageError("--x0: expected " + std::to_string(b.chart.dim()) + " coordinates");
    x0 = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  VolumeForm phi;
  if (rc.volume == "lebesgue") {
    phi = VolumeForm::lebesgue(b.chart.dim());
  } else if (rc.volume == "left" || rc.volume == "invariant") {
    if (!b.group) throw UsageError("--volume " + rc.volume + " needs a group model");
    phi = rc.volume == "left" ? left_volume_density(*b.group) : invariant_volume(*b.group);
  } else {
    throw UsageError("--volume must be lebesgue, left or invariant");
  }

  const Trajectory traj = integrate(b.chart, H, x0, rc.h, rc.steps);
  const DriftReport d = volume_drift(b.chart, phi, traj, b.casimirs);
  const bool preserved = d.volume_drift <= rc.tol;

  if (!rc.out.empty()) {
    std::ofstream f(rc.out);
    if (!f) throw UsageError("cannot write CSV file '" + rc.out + "'");
    write_csv(f, traj, b.casimirs, rc.stride);
  }

  json r;
  r["model"] = b.id;
  r["structure"] = b.primary_structure;
  r["hamiltonian"] = H.name;
  r["volume"] = rc.volume;
  r["x0"] = to_json(x0);
  r["h"] = rc.h;
  r["steps"] = rc.steps;
  r["t_final"] = traj.times.back();
  r["volume_drift"] = d.volume_drift;
  r["energy_drift"] = d.energy_drift;
  json cas = json::object();
  for (const auto& [name, v] : d.casimir_drifts) cas[name] = v;
  r["casimir_drifts"] = cas;
  r["tolerance"] = rc.tol;
  r["preserved"] = preserved;
  r["seed"] = seed;

  std::ostringstream s;
  s << std::setprecision(6);
  s << "model: " << b.id << ", H = " << H.name << ", volume " << rc.volume << "\n";
  s << "steps: " << rc.steps << " of h = " << rc.h << " (t = " << traj.times.back() << ")\n";
  s << "volume drift: " << d.volume_drift << " -> " << (preserved ? "PRESERVED" : "NOT PRESERVED")
    << " (tol " << rc.tol << ")\n";
  s << "energy drift: " << d.energy_drift << "\n";
  for (const auto& [name, v] : d.casimir_drifts) s << "casimir " << name << " drift: " << v << "\n";
  if (!rc.out.empty()) s << "trajectory written to " << rc.out << "\n";
  emit(rc, r, s.str(), out);
  return kOk;
}

int cmd_morse(const RunConfig& rc, std::ostream& out) {
  const ModelBundle b = load_bundle(rc);
  if (!b.group || !b.bialgebra) throw UsageError("model " + b.id + " has no group or bialgebra data");
  const ScalarField H = resolve_hamiltonian(b, rc.hamiltonian);
  const MorseReport m = morse_report(*b.group, H, *b.bialgebra);

  json r;
  r["model"] = b.id;
  r["structure"] = b.primary_structure;
  r["morse"] = morse_json(m, H.name);
  r["verdict"] = m.verdict;

  std::ostringstream s;
  s << std::setprecision(6);
  s << "model: " << b.id << ", H = " << H.name << "\n";
  s << "gradient at e: " << fmt_vec(m.gradient_at_e) << (m.is_critical ? " (critical)" : " (not critical)")
    << "\n";
  s << "hessian eigenvalues: " << fmt_vec(m.eigenvalues) << (m.is_morse ? " (Morse)" : "") << "\n";
  s << "dual modular character: " << fmt_vec(m.dual_modular_character) << "\n";
  s << "kernel condition: " << fmt_vec(m.kernel_condition) << ", norm " << m.kernel_norm << "\n";
  s << "verdict: " << m.verdict << "\n";
  emit(rc, r, s.str(), out);
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& rc) {
  // -h is taken by the step size
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->add_option("model,--model", rc.model, "Built-in model id (sl2r, s3, lorenz, eulertop, liepoisson)");
  sub->add_option("--config", rc.config, "JSON model description");
  sub->add_option("--eta", rc.eta, "Deformation parameter for lorenz and eulertop");
  sub->add_option("--algebra", rc.algebra, "Algebra for liepoisson (so3, affine2d, abelian3, ...)");
  sub->add_option("--structure", rc.structure, "Use a companion Poisson structure (eulertop: pi1)");
  sub->add_option("--H", rc.hamiltonian, "Hamiltonian name, expr:<expression> or quadratic:i1,i2,...");
  sub->add_option("--seed", rc.seed, "Sampling seed (default: PLG_SEED or 20240613)");
  sub->add_option("--samples", rc.samples, "Number of sample points for residual checks")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol", rc.tol, "Tolerance for the preserved/not preserved verdict")
      ->check(CLI::PositiveNumber);
  sub->add_option("--report", rc.report, "Write the JSON report to this file");
  sub->add_flag("--json", rc.json_stdout, "Print the JSON report instead of the summary");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Poisson-Lie unimodularity checks and volume diagnostics", "plg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "plg 0.1.0");

  auto* check = app.add_subcommand("check", "Unimodularity verdict, residuals and closed-form checks");
  auto* simulate = app.add_subcommand("simulate", "Integrate a Hamiltonian flow and measure volume drift");
  auto* morse = app.add_subcommand("morse", "Hessian of H at the identity and the resulting verdict");
  for (auto* sub : {check, simulate, morse}) add_common(sub, rc);
  simulate->add_option("--x0", rc.x0, "Initial point, comma separated");
  simulate->add_option("--h", rc.h, "Step size");
  simulate->add_option("--steps", rc.steps, "Number of steps");
  simulate->add_option("--stride", rc.stride, "Write every n-th step to the CSV");
  simulate->add_option("--volume", rc.volume, "lebesgue, left or invariant")
      ->check(CLI::IsMember({"lebesgue", "left", "invariant"}));
  simulate->add_option("--out", rc.out, "Trajectory CSV path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "plg 0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "plg: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (check->parsed()) return cmd_check(rc, out);
    if (simulate->parsed()) return cmd_simulate(rc, out);
    return cmd_morse(rc, out);
  } catch (const DomainError& e) {
    err << "plg: domain exit: " << e.what() << "\n";
    return kDomain;
  } catch (const ConfigError& e) {
    err << "plg: " << e.what() << "\n";
    return kValidation;
  } catch (const ValidationError& e) {
    err << "plg: validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const UsageError& e) {
    err << "plg: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "plg: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace plg::cli
