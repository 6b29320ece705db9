#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "output.hpp"
#include "sixth/errors.hpp"
#include "sixth/galerkin.hpp"
#include "sixth/oracle.hpp"

namespace sixth::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// JSON config: flat object whose keys are option names. Values are applied
// before the command line is parsed, so flags win.

class ConfigBinder {
 public:
  template <class T>
  CLI::Option* option(CLI::App* app, const std::string& name, T& var, const std::string& help) {
    auto* opt = app->add_option("--" + name, var, help);
    if constexpr (!std::is_same_v<T, std::vector<std::string>> &&
                  !std::is_same_v<T, std::vector<double>>) {
      opt->capture_default_str();
    }
    fields_[name] = {opt, [&var, name](const json& v) { assign(var, v, name); }};
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
    auto* opt = app->add_flag("--" + name, var, help);
    fields_[name] = {opt, [&var, name](const json& v) { assign(var, v, name); }};
    return opt;
  }

  void apply(const json& config, const std::string& source) {
    if (!config.is_object()) throw InvalidArgument(source + ": top level must be a JSON object");
    for (const auto& [key, value] : config.items()) {
      std::string name = key;
      std::replace(name.begin(), name.end(), '_', '-');
      if (name == "config") throw InvalidArgument(source + ": field 'config' cannot nest");
      auto it = fields_.find(name);
      if (it == fields_.end()) throw InvalidArgument(source + ": unknown field '" + key + "'");
      try {
        it->second.assign(value);
      } catch (const InvalidArgument& e) {
        throw InvalidArgument(source + ": " + e.what());
      }
      from_config_.insert(name);
    }
  }

  /// Set on the command line or in the config file.
  bool given(const std::string& name) const {
    auto it = fields_.find(name);
    return from_config_.count(name) || (it != fields_.end() && it->second.opt->count() > 0);
  }

 private:
  struct Field {
    CLI::Option* opt;
    std::function<void(const json&)> assign;
  };

  static InvalidArgument type_error(const std::string& name, const char* expected,
                                    const json& v) {
    return InvalidArgument("field '" + name + "': expected " + expected + ", got " +
                           std::string(v.type_name()));
  }
  static void assign(int& var, const json& v, const std::string& name) {
    if (!v.is_number_integer()) throw type_error(name, "integer", v);
    var = v.get<int>();
  }
  static void assign(double& var, const json& v, const std::string& name) {
    if (!v.is_number()) throw type_error(name, "number", v);
    var = v.get<double>();
  }
  static void assign(bool& var, const json& v, const std::string& name) {
    if (!v.is_boolean()) throw type_error(name, "boolean", v);
    var = v.get<bool>();
  }
  static void assign(std::string& var, const json& v, const std::string& name) {
    if (!v.is_string()) throw type_error(name, "string", v);
    var = v.get<std::string>();
  }
  static void assign(std::vector<std::string>& var, const json& v, const std::string& name) {
    if (!v.is_array()) throw type_error(name, "array of strings", v);
    var.clear();
    for (const auto& e : v) {
      if (!e.is_string()) throw type_error(name, "array of strings", v);
      var.push_back(e.get<std::string>());
    }
  }
  static void assign(std::vector<double>& var, const json& v, const std::string& name) {
    if (!v.is_array()) throw type_error(name, "array of numbers", v);
    var.clear();
    for (const auto& e : v) {
      if (!e.is_number()) throw type_error(name, "array of numbers", v);
      var.push_back(e.get<double>());
    }
  }

  std::map<std::string, Field> fields_;
  std::set<std::string> from_config_;
};

json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.what() carries "at line L, column C"
    throw InvalidArgument("config file '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct Common {
  int M = 100;
  std::string out;
  std::string format = "csv";
  std::string config;
  bool timings = false;
};

void add_common(ConfigBinder& binder, CLI::App* app, Common& c) {
  binder.option(app, "M", c.M, "Truncation order (1..10000)");
  binder.option(app, "out", c.out, "Output path (stdout when empty)");
  binder.option(app, "format", c.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--config", c.config, "JSON file with option values; flags override");
  binder.flag(app, "timings", c.timings, "Report wall-clock timings");
}

void check_order(int M) {
  if (M < 1 || M > Basis::max_order) {
    throw InvalidArgument("--M must lie in [1, " + std::to_string(Basis::max_order) + "], got " +
                          std::to_string(M));
  }
}

template <class Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  fn(static_cast<std::ostream&>(file));
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument("bad integer in " + what + ": '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument("bad number in " + what + ": '" + text + "'");
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const std::string& what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidArgument(what + " entries look like key=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

// "power=coefficient"
std::vector<ForcingTerm> parse_forcing(const std::vector<std::string>& items) {
  std::vector<ForcingTerm> out;
  for (const auto& item : items) {
    auto [p, c] = split_assignment(item, "--force");
    out.push_back({parse_int(p, "--force"), parse_double(c, "--force")});
  }
  return out;
}

struct ModeRef {
  Parity parity;
  int index;
};

// "c3", "s1", "c0"
ModeRef parse_mode(const std::string& text, int M) {
  if (text.size() < 2 || (text[0] != 'c' && text[0] != 's')) {
    throw InvalidArgument("mode names look like c3 or s1, got '" + text + "'");
  }
  const ModeRef r{text[0] == 'c' ? Parity::even : Parity::odd, parse_int(text.substr(1), "mode name")};
  const int lo = r.parity == Parity::even ? 0 : 1;
  if (r.index < lo || r.index > M) {
    throw InvalidArgument("mode '" + text + "' outside the basis (M = " + std::to_string(M) + ")");
  }
  return r;
}

double& coefficient(CoefficientSet& c, const ModeRef& r) {
  if (r.parity == Parity::even) return r.index == 0 ? c.u0c : c.uc[r.index - 1];
  return c.us[r.index - 1];
}

json forcing_json(const std::vector<ForcingTerm>& forcing) {
  json arr = json::array();
  for (const auto& t : forcing) arr.push_back({{"power", t.power}, {"coefficient", t.coefficient}});
  return arr;
}

// ---------------------------------------------------------------------------
// eigenvalues

struct EigenvaluesArgs {
  int m_max = -1;
  std::string parity = "both";
};

void cmd_eigenvalues(const Common& c, const EigenvaluesArgs& a, std::ostream& out,
                     std::ostream& err) {
  check_order(c.M);
  const int m_max = a.m_max < 0 ? c.M : a.m_max;
  if (m_max > Basis::max_order) throw InvalidArgument("--m-max exceeds " + std::to_string(Basis::max_order));
  if (a.parity != "both" && a.parity != "even" && a.parity != "odd") {
    throw InvalidArgument("--parity must be both, even or odd");
  }
  const bool even = a.parity != "odd", odd = a.parity != "even";
  const auto t0 = Clock::now();

  Table t;
  t.columns = {"m"};
  if (even) t.columns.insert(t.columns.end(), {"lambda_c", "asymptotic_c"});
  if (odd) t.columns.insert(t.columns.end(), {"lambda_s", "asymptotic_s"});
  for (int m = even ? 0 : 1; m <= m_max; ++m) {
    std::vector<Cell> row{std::int64_t{m}};
    if (even) {
      row.emplace_back(solve_eigenvalue(Parity::even, m).lambda);
      if (m == 0) {
        row.emplace_back(std::monostate{});
      } else {
        row.emplace_back(eigenvalue_asymptotic(Parity::even, m));
      }
    }
    if (odd) {
      if (m == 0) {
        row.emplace_back(std::monostate{});
        row.emplace_back(std::monostate{});
      } else {
        row.emplace_back(solve_eigenvalue(Parity::odd, m).lambda);
        row.emplace_back(eigenvalue_asymptotic(Parity::odd, m));
      }
    }
    t.add_row(std::move(row));
  }
  with_output(c.out, out, [&](std::ostream& os) { t.write(os, parse_format(c.format)); });
  if (c.timings) err << "timing eigenvalues_s=" << format_double(seconds_since(t0)) << '\n';
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string model;
  double a6 = 1.0, a4 = 0.0, a2 = 0.0, a0 = 0.0;
  std::vector<std::string> force;
  int points = 201;
  int fit_min = 50;
};

std::string error_tier(double e) {
  if (e <= 5e-13) return "stretch";
  if (e <= 1e-10) return "required";
  return "none";
}

void cmd_solve(const Common& c, const SolveArgs& a, const ConfigBinder& binder, std::ostream& out,
               std::ostream& err) {
  check_order(c.M);
  if (a.points < 2) throw InvalidArgument("--points must be at least 2");
  if (a.fit_min < 1) throw InvalidArgument("--fit-min must be at least 1");
  const Format format = parse_format(c.format);

  BvpSpec spec;
  std::string model;
  if (!a.model.empty()) {
    for (const char* k : {"a6", "a4", "a2", "a0", "force"}) {
      if (binder.given(k)) throw InvalidArgument(std::string("--model conflicts with --") + k);
    }
    if (a.model == "I" || a.model == "1") {
      spec = BvpSpec::model_I();
      model = "I";
    } else if (a.model == "II" || a.model == "2") {
      spec = BvpSpec::model_II();
      model = "II";
    } else {
      throw InvalidArgument("--model must be I or II, got '" + a.model + "'");
    }
  } else {
    spec.a6 = a.a6;
    spec.a4 = a.a4;
    spec.a2 = a.a2;
    spec.a0 = a.a0;
    spec.forcing = parse_forcing(a.force);
  }
  spec.validate();

  const auto t0 = Clock::now();
  const Basis basis(c.M);
  const double t_basis = seconds_since(t0);
  const auto t1 = Clock::now();
  const SteadySolution sol = solve_steady(spec, basis);
  const double t_solve = seconds_since(t1);
  const auto& u = sol.coefficients;

  // samples
  Table samples;
  samples.columns = {"x", "u"};
  if (!model.empty()) samples.columns.insert(samples.columns.end(), {"exact", "error"});
  double max_error = 0.0, max_u = 0.0;
  for (int i = 0; i < a.points; ++i) {
    const double x = i == a.points - 1 ? 1.0 : -1.0 + 2.0 * i / (a.points - 1);
    const double v = synthesize(basis, u, x);
    max_u = std::fmax(max_u, std::fabs(v));
    std::vector<Cell> row{x, v};
    if (!model.empty()) {
      const double e = model_exact_solution(x);
      max_error = std::fmax(max_error, std::fabs(v - e));
      row.emplace_back(e);
      row.emplace_back(v - e);
    }
    samples.add_row(std::move(row));
  }

  Table coeffs;
  coeffs.columns = {"n", "u_c", "abs_u_c"};
  coeffs.add_row({std::int64_t{0}, u.u0c, std::fabs(u.u0c)});
  std::vector<double> fn, fu;
  for (int n = 1; n <= c.M; ++n) {
    coeffs.add_row({std::int64_t{n}, u.uc[n - 1], std::fabs(u.uc[n - 1])});
    if (n >= a.fit_min) {
      fn.push_back(n);
      fu.push_back(u.uc[n - 1]);
    }
  }
  json fit = nullptr;
  if (fn.size() >= 2) {
    try {
      const PowerFit f = fit_power_law(fn, fu);
      fit = {{"n_min", a.fit_min}, {"n_max", c.M}, {"exponent", f.exponent},
             {"prefactor", f.prefactor}, {"points", f.points}};
    } catch (const InvalidArgument&) {
      fit = nullptr;  // all-zero tail
    }
  }

  // boundary conditions hold by construction; check them anyway
  json boundary = json::object();
  for (int k : {1, 2, 5}) {
    double worst = 0.0;
    for (double x : {-1.0, 1.0}) worst = std::fmax(worst, std::fabs(synthesize(basis, u, x, k)));
    const double bound = 1e-6 * std::pow(basis.lambda(Parity::even, c.M), k) * std::fmax(1.0, max_u);
    boundary["max_abs_u" + std::to_string(k)] = worst;
    if (!(worst <= bound)) {
      throw NumericalError(NumericalError::Kind::inconsistent,
                           "boundary condition u^(" + std::to_string(k) + ")(+-1) = " +
                               format_double(worst) + " exceeds " + format_double(bound));
    }
  }

  double max_f = 0.0;
  for (int i = 0; i <= 2000; ++i) max_f = std::fmax(max_f, std::fabs(spec.forcing_at(-1.0 + i / 1000.0)));
  const double residual = oracle::residual_scan(spec, basis, u, 51);

  json summary;
  summary["command"] = "solve";
  summary["M"] = c.M;
  summary["model"] = model.empty() ? json(nullptr) : json(model);
  summary["equation"] = {{"a6", spec.a6}, {"a4", spec.a4}, {"a2", spec.a2}, {"a0", spec.a0},
                         {"forcing", forcing_json(spec.forcing)}};
  json solver = {{"path", std::string(to_string(sol.path))}, {"warnings", sol.warnings}};
  if (sol.path == SolverPath::ldlt) {
    solver["pivots"] = {{"count", sol.pivots.size()},
                        {"all_negative", (sol.pivots.array() < 0.0).all()},
                        {"min", sol.pivots.minCoeff()},
                        {"max", sol.pivots.maxCoeff()}};
  }
  summary["solver"] = solver;
  summary["u0c"] = u.u0c;
  summary["sample_points"] = a.points;
  if (!model.empty()) {
    summary["max_error"] = max_error;
    summary["error_tier"] = error_tier(max_error);
  }
  summary["decay_fit"] = fit;
  summary["residual"] = {{"points", 51}, {"max_abs", residual},
                         {"relative", max_f > 0.0 ? residual / max_f : 0.0}};
  summary["boundary"] = boundary;
  if (c.timings) {
    summary["timings"] = {{"basis_s", t_basis}, {"solve_s", t_solve}, {"total_s", seconds_since(t0)}};
  }

  if (c.out.empty()) {
    write_json(out, summary);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InvalidArgument("cannot create output directory '" + c.out + "'");
  const std::string ext = format == Format::csv ? ".csv" : ".json";
  with_output((dir / ("solution" + ext)).string(), out, [&](std::ostream& os) { samples.write(os, format); });
  with_output((dir / ("coefficients" + ext)).string(), out, [&](std::ostream& os) { coeffs.write(os, format); });
  with_output((dir / "summary.json").string(), out, [&](std::ostream& os) { write_json(os, summary); });
  for (const auto& w : sol.warnings) err << "warning: " << w << '\n';
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  int max_index = 20;
  bool no_printed = false;
};

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  check_order(c.M);
  if (a.max_index < 0 || a.max_index > 50) throw InvalidArgument("--max-index must lie in [0, 50]");
  const auto t0 = Clock::now();
  const Basis basis(std::max({c.M, a.max_index, 1}));
  const auto reports = oracle::verify_sweep(basis, a.max_index, !a.no_printed);

  Table t;
  t.columns = {"kind", "parity", "n_or_p", "m", "variant", "documented_misprint",
               "closed_form", "quadrature", "rel_discrepancy", "pass", "status"};
  int failures = 0, documented = 0;
  for (const auto& r : reports) {
    std::string status = r.pass ? "pass" : "fail";
    if (!r.pass && r.variant == FormulaVariant::printed) {
      status = "documented_discrepancy";
      ++documented;
    } else if (!r.pass) {
      ++failures;
    }
    t.add_row({oracle::to_string(r.kind), std::string(to_string(r.parity)), std::int64_t{r.n},
               std::int64_t{r.m}, std::string(to_string(r.variant)), r.documented_misprint,
               r.closed_form, r.quadrature, r.rel_discrepancy, r.pass, status});
  }

  const Format format = parse_format(c.format);
  with_output(c.out, out, [&](std::ostream& os) {
    if (format == Format::csv) {
      t.write_csv(os);
      return;
    }
    json j;
    j["command"] = "verify";
    j["max_index"] = a.max_index;
    j["threshold"] = oracle::VerificationReport::threshold;
    j["quadrature_tolerance"] = 1e-12;
    j["summary"] = {{"reports", reports.size()},
                    {"failures", failures},
                    {"documented_discrepancies", documented},
                    {"pass", failures == 0}};
    j["reports"] = t.to_json();
    write_json(os, j);
  });
  err << "verify: " << reports.size() << " reports, " << failures << " failures, " << documented
      << " documented discrepancies in printed forms\n";
  if (c.timings) err << "timing verify_s=" << format_double(seconds_since(t0)) << '\n';
  return failures == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------
// evolve

struct EvolveArgs {
  double B = 0.0, T = 0.0, reaction = 0.0;
  double dt = 1e-4;
  int steps = 100;
  double theta = 0.5;
  int every = 1;
  std::vector<std::string> initial{"c1=1"};
  std::vector<std::string> force;
  std::vector<std::string> track{"c0", "c1", "c2", "s1"};
  std::vector<double> sample{0.0};
  std::string steady_model;
  bool require_steady = false;
  double steady_tol = 1e-8;
  std::string summary;
};

int cmd_evolve(const Common& c, EvolveArgs a, const ConfigBinder& binder, std::ostream& out,
               std::ostream& err) {
  check_order(c.M);
  if (!(a.dt > 0.0)) throw InvalidArgument("--dt must be positive");
  if (a.steps < 0) throw InvalidArgument("--steps must be non-negative");
  if (!(a.theta >= 0.0 && a.theta <= 1.0)) throw InvalidArgument("--theta must lie in [0, 1]");
  if (a.every < 1) throw InvalidArgument("--every must be at least 1");
  for (double x : a.sample) {
    if (!(std::fabs(x) <= 1.0)) throw InvalidArgument("--sample points must lie in [-1, 1]");
  }

  std::vector<ForcingTerm> forcing = parse_forcing(a.force);
  if (!a.steady_model.empty()) {
    for (const char* k : {"B", "T", "reaction", "force"}) {
      if (binder.given(k)) throw InvalidArgument(std::string("--steady-model conflicts with --") + k);
    }
    BvpSpec spec;
    if (a.steady_model == "I" || a.steady_model == "1") {
      spec = BvpSpec::model_I();
    } else if (a.steady_model == "II" || a.steady_model == "2") {
      spec = BvpSpec::model_II();
    } else {
      throw InvalidArgument("--steady-model must be I or II");
    }
    // u_t = B u'' - T u'''' + u^(6) + r u + g is steady exactly when
    // u^(6) - T u'''' + B u'' + r u = -g
    a.B = spec.a2;
    a.T = 0.0 - spec.a4;
    a.reaction = spec.a0;
    forcing.clear();
    for (const auto& t : spec.forcing) forcing.push_back({t.power, -t.coefficient});
  }
  BvpSpec check;
  check.forcing = forcing;
  check.validate();

  const auto t0 = Clock::now();
  const Basis basis(c.M);
  const CoefficientSet f = forcing_coefficients(basis, forcing);
  const SemiDiscreteSystem system = assemble_semi_discrete(basis, a.B, a.T, f, a.reaction);

  CoefficientSet init = CoefficientSet::zeros(c.M);
  for (const auto& item : a.initial) {
    auto [name, value] = split_assignment(item, "--initial");
    coefficient(init, parse_mode(name, c.M)) = parse_double(value, "--initial");
  }
  std::vector<std::pair<std::string, ModeRef>> tracked;
  for (const auto& name : a.track) {
    const ModeRef r = parse_mode(name, c.M);
    tracked.emplace_back(name, r);
  }

  const auto states = evolve(system, init, a.dt, a.steps, a.theta, a.every);

  Table t;
  t.columns = {"step", "t"};
  for (const auto& [name, r] : tracked) t.columns.push_back(name);
  for (double x : a.sample) t.columns.push_back("u(" + format_double(x) + ")");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const int step = i + 1 == states.size() ? a.steps : static_cast<int>(i) * a.every;
    std::vector<Cell> row{std::int64_t{step}, step * a.dt};
    auto state = states[i];
    for (const auto& [name, r] : tracked) row.emplace_back(coefficient(state, r));
    for (double x : a.sample) row.emplace_back(synthesize(basis, state, x));
    t.add_row(std::move(row));
  }
  with_output(c.out, out, [&](std::ostream& os) { t.write(os, parse_format(c.format)); });

  json summary;
  summary["command"] = "evolve";
  summary["M"] = c.M;
  summary["B"] = a.B;
  summary["T"] = a.T;
  summary["reaction"] = a.reaction;
  summary["forcing"] = forcing_json(forcing);
  summary["dt"] = a.dt;
  summary["steps"] = a.steps;
  summary["theta"] = a.theta;
  summary["final_time"] = a.steps * a.dt;

  int code = 0;
  json steady = nullptr;
  const bool compare = !forcing.empty() || !a.steady_model.empty() || a.require_steady;
  if (compare) {
    try {
      const SteadySolution s = solve_steady(steady_equivalent(a.B, a.T, a.reaction, forcing), basis);
      const auto& fin = states.back();
      double dev = std::fabs(fin.u0c - s.coefficients.u0c);
      dev = std::fmax(dev, (fin.uc - s.coefficients.uc).cwiseAbs().maxCoeff());
      dev = std::fmax(dev, fin.us.cwiseAbs().maxCoeff());
      steady = {{"max_coefficient_deviation", dev}, {"tolerance", a.steady_tol},
                {"reached", dev <= a.steady_tol}};
      if (a.require_steady && !(dev <= a.steady_tol)) {
        err << "error: final state deviates from the steady solution by " << format_double(dev)
            << '\n';
        code = 2;
      }
    } catch (const NumericalError& e) {
      if (a.require_steady) throw;
      steady = {{"unavailable", e.what()}};
    }
  }
  summary["steady_comparison"] = steady;
  if (c.timings) summary["timings"] = {{"total_s", seconds_since(t0)}};
  if (!a.summary.empty()) {
    with_output(a.summary, out, [&](std::ostream& os) { write_json(os, summary); });
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral Galerkin solver for sixth-order boundary value problems", "sixth"};
  app.require_subcommand(1);

  Common common;
  EigenvaluesArgs ea;
  SolveArgs sa;
  VerifyArgs va;
  EvolveArgs va_evolve;

  auto* eig = app.add_subcommand("eigenvalues", "Tabulate eigenvalues against their asymptotes");
  auto* solve = app.add_subcommand("solve", "Solve a steady problem (model I/II or custom)");
  auto* verify = app.add_subcommand("verify", "Check closed-form coefficients against quadrature");
  auto* evo = app.add_subcommand("evolve", "Integrate the semi-discrete system in time");

  // Every subcommand binds the same Common; only one runs per invocation.
  std::map<CLI::App*, ConfigBinder> binders;
  for (auto* sub : {eig, solve, verify, evo}) add_common(binders[sub], sub, common);

  binders[eig].option(eig, "m-max", ea.m_max, "Largest index (defaults to M)");
  binders[eig].option(eig, "parity", ea.parity, "both, even or odd");

  auto& sb = binders[solve];
  sb.option(solve, "model", sa.model, "Model problem I or II");
  sb.option(solve, "a6", sa.a6, "Coefficient of u^(6)");
  sb.option(solve, "a4", sa.a4, "Coefficient of u''''");
  sb.option(solve, "a2", sa.a2, "Coefficient of u''");
  sb.option(solve, "a0", sa.a0, "Coefficient of u");
  sb.option(solve, "force", sa.force, "Forcing term power=coefficient (repeatable)");
  sb.option(solve, "points", sa.points, "Uniform sample points on [-1, 1]");
  sb.option(solve, "fit-min", sa.fit_min, "Smallest n in the decay fit");

  binders[verify].option(verify, "max-index", va.max_index, "Largest n, m (<= 50)");
  binders[verify].flag(verify, "no-printed", va.no_printed, "Skip the published-variant reports");

  auto& eb = binders[evo];
  eb.option(evo, "B", va_evolve.B, "Bond number (coefficient of u'')");
  eb.option(evo, "T", va_evolve.T, "Tension number (u'''' enters as -T)");
  eb.option(evo, "reaction", va_evolve.reaction, "Coefficient of u");
  eb.option(evo, "dt", va_evolve.dt, "Time step");
  eb.option(evo, "steps", va_evolve.steps, "Number of steps");
  eb.option(evo, "theta", va_evolve.theta, "Theta of the scheme (0.5 = Crank-Nicolson)");
  eb.option(evo, "every", va_evolve.every, "Record every k-th step");
  eb.option(evo, "initial", va_evolve.initial, "Initial coefficients mode=value, e.g. c1=1");
  eb.option(evo, "force", va_evolve.force, "Forcing term power=coefficient (repeatable)");
  eb.option(evo, "track", va_evolve.track, "Coefficients to output, e.g. c0 c1 s1");
  eb.option(evo, "sample", va_evolve.sample, "x positions of solution samples");
  eb.option(evo, "steady-model", va_evolve.steady_model,
            "Use the model I/II operator and forcing so the limit is that solution");
  eb.flag(evo, "require-steady", va_evolve.require_steady,
          "Fail unless the final state matches the steady solve");
  eb.option(evo, "steady-tol", va_evolve.steady_tol, "Tolerance for --require-steady");
  eb.option(evo, "summary", va_evolve.summary, "Write a JSON run summary here");

  try {
    // config values go in before parsing so that flags override them
    if (!args.empty()) {
      CLI::App* sub = nullptr;
      for (auto* s : {eig, solve, verify, evo}) {
        if (s->get_name() == args[0]) sub = s;
      }
      for (std::size_t i = 1; sub && i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
          path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
          path = args[i].substr(9);
        }
        if (!path.empty()) binders[sub].apply(load_config(path), "config '" + path + "'");
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (eig->parsed()) {
      cmd_eigenvalues(common, ea, out, err);
      return 0;
    }
    if (solve->parsed()) {
      cmd_solve(common, sa, binders[solve], out, err);
      return 0;
    }
    if (verify->parsed()) return cmd_verify(common, va, out, err);
    return cmd_evolve(common, va_evolve, binders[evo], out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sixth::cli
