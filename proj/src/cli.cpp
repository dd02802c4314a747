#include "gcyc/cli.hpp"

#include "gcyc/config.hpp"
#include "gcyc/corpus.hpp"
#include "gcyc/errors.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gcyc::cli {

namespace {

using report::Json;

struct Options {
  std::string scenario = "example32";
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
  std::string x0;
  std::string out;
  std::string format = "json";
  std::string trace;
  int resolution = 12;
  unsigned workers = 1;
  bool three_point = false;
  bool timings = false;
};

Scenario resolve_scenario(const std::string& ref) {
  if (auto entry = corpus_entry(ref)) return std::move(entry->scenario);
  if (std::filesystem::exists(ref)) return load_scenario_file(ref);
  throw ConfigError("--scenario", "'" + ref + "' is neither a corpus id nor a readable file",
                    ConfigError::Code::Io);
}

Point parse_point(const std::string& text, int dimension) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--x0", "cannot parse '" + item + "' as a number");
    }
  }
  if (static_cast<int>(values.size()) != dimension)
    throw ConfigError("--x0", "expected " + std::to_string(dimension) + " coordinate(s)");
  Point p(dimension);
  for (int i = 0; i < dimension; ++i) p[i] = values[static_cast<std::size_t>(i)];
  return p;
}

Point start_point(const Options& o, const Scenario& s, std::uint64_t seed) {
  if (!o.x0.empty()) return parse_point(o.x0, s.dimension());
  auto rng = make_rng(seed, 0x5eed);
  auto p = s.cover.subset(1).sample(rng);
  if (!p) throw PreconditionError("A_1 produced no start point; pass --x0");
  return *p;
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, num17(j.get<double>()));
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string render(const Json& rep, const std::string& format) {
  if (format == "json") return rep.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(rep, "", rows);
  std::string s;
  if (format == "csv") {
    s = "key,value\n";
    for (const auto& [k, v] : rows) {
      std::string cell = v;
      if (cell.find_first_of(",\"") != std::string::npos) {
        std::string q = "\"";
        for (char c : cell) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        cell = q + "\"";
      }
      s += k + "," + cell + "\n";
    }
    return s;
  }
  for (const auto& [k, v] : rows) s += k + ": " + v + "\n";
  return s;
}

struct Run {
  Json details = Json::object();
  Json witnesses = Json::array();
  bool pass = true;
  std::string trace_csv;
};

Run do_check_axioms(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  auto src = PointSource::uniform(s.domain, seed);
  const AxiomReport rep = check_g_axioms(s.g, src, o.samples.value_or(10000), o.tol.value_or(1e-12));
  r.details = report::axiom_details(rep);
  report::axiom_witnesses(rep, r.witnesses);
  r.pass = rep.pass();
  return r;
}

Run do_check_cyclic(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  const CyclicReport rep = validate_cyclic_cover(s.cover, s.map, seed, o.samples.value_or(10000));
  r.details = report::cyclic_details(rep);
  report::cyclic_witnesses(rep, r.witnesses);
  r.pass = rep.pass();
  return r;
}

Run do_certify(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  const Certificate c = certify(s, o.samples.value_or(10000), o.tol.value_or(1e-12), seed,
                                {.three_point = o.three_point, .workers = o.workers});
  r.details = report::certificate_details(c);
  report::certificate_witnesses(c, r.witnesses);
  r.pass = c.pass;
  return r;
}

Run do_estimate(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  const ConstantsEstimate e = estimate_constants(s, o.samples.value_or(2000), o.resolution, seed,
                                                 o.tol.value_or(1e-12),
                                                 {.three_point = o.three_point, .workers = o.workers});
  r.details = report::estimate_details(e, s.kind);
  if (!e.feasible) {
    Json w;
    w["check"] = "estimate";
    w["points"] = Json::array();
    w["value"] = static_cast<double>(e.candidates_tried);
    r.witnesses.push_back(std::move(w));
  }
  r.pass = e.feasible;
  return r;
}

Run do_solve(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  const double tol = o.tol.value_or(s.defaults.tol);
  const std::size_t max_iter = o.max_iter.value_or(s.defaults.max_iter);
  const Point x0 = start_point(o, s, seed);
  const IterationTrace trace = picard(s, x0, tol, max_iter);

  r.details = report::trace_details(trace);
  r.details["x0"] = report::point_json(x0);
  r.details["tol"] = tol;
  r.details["max_iter"] = max_iter;

  const auto kappa = contraction_factor(s.kind, s.alpha, s.gamma);
  r.details["kappa"] = report::maybe(kappa);
  bool bound_ok = true;
  if (kappa && *kappa < 1.0 && !trace.residuals.empty()) {
    const std::size_t bound = a_priori_iterations(*kappa, trace.residuals.front(), tol);
    // The bound counts steps until r_n <= tol; the trace takes one more step
    // to observe that residual.
    bound_ok = trace.steps() <= bound + 1;
    r.details["a_priori_bound"] = bound;
    r.details["within_bound"] = bound_ok;
  } else {
    r.details["a_priori_bound"] = nullptr;
  }

  if (trace.steps() >= 1) {
    const TraceReport tr = check_trace_properties(trace, s, tol);
    r.details["trace_checks"] = report::trace_report_details(tr);
    report::trace_report_witnesses(tr, trace, r.witnesses);
    r.pass = tr.pass();
  }
  if (s.domain.contains(trace.final_iterate)) {
    const FixedPointReport fp = verify_fixed_point(s, trace.final_iterate, tol);
    r.details["fixed_point"] = report::fixed_point_details(fp);
  }
  if (trace.outcome != Outcome::Converged) {
    Json w;
    w["check"] = "convergence";
    w["points"] = Json::array({report::point_json(trace.final_iterate)});
    w["value"] = trace.residuals.empty() ? 0.0 : trace.residuals.back();
    r.witnesses.push_back(std::move(w));
  }
  r.pass = r.pass && trace.outcome == Outcome::Converged && bound_ok;

  std::ostringstream csv;
  write_trace_csv(csv, trace);
  r.trace_csv = csv.str();
  return r;
}

Run do_verify(const Scenario& s, const Options& o, std::uint64_t) {
  Run r;
  if (o.x0.empty()) throw ConfigError("--x0", "verify needs the candidate point in --x0");
  const FixedPointReport fp = verify_fixed_point(s, parse_point(o.x0, s.dimension()), o.tol.value_or(1e-12));
  r.details = report::fixed_point_details(fp);
  report::fixed_point_witnesses(fp, r.witnesses);
  r.pass = fp.pass;
  return r;
}

Run do_report(const Scenario& s, const Options& o, std::uint64_t seed) {
  Run r;
  Options sub = o;
  sub.tol.reset();

  Run axioms = do_check_axioms(s, sub, seed);
  Run cyclic = do_check_cyclic(s, sub, seed);

  auto src = PointSource::uniform(s.domain, seed);
  const double t_max = std::max(1.0, estimate_g_diameter(s.g, src, 2048));
  const ControlReport control = check_control_pair(
      s.phi, s.psi, uniform_grid(t_max, 200), 1e-12, {.psi_mode = s.psi_mode, .oscillation_modulus = std::nullopt});
  Run certificate = do_certify(s, sub, seed);

  Options solve_opts = o;
  Run solve = do_solve(s, solve_opts, seed);

  r.details["check_axioms"] = axioms.details;
  r.details["check_cyclic"] = cyclic.details;
  r.details["check_control"] = report::control_details(control);
  r.details["certify"] = certificate.details;
  r.details["solve"] = solve.details;
  for (Run* part : {&axioms, &cyclic, &certificate, &solve})
    for (auto& w : part->witnesses) r.witnesses.push_back(w);
  report::control_witnesses(control, r.witnesses);
  r.pass = axioms.pass && cyclic.pass && control.pass() && certificate.pass && solve.pass;
  r.trace_csv = std::move(solve.trace_csv);
  return r;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario file or corpus id")->capture_default_str();
  cmd->add_option("--samples", o.samples, "Samples per check (per adjacent pair for certify)");
  cmd->add_option("--tol", o.tol, "Tolerance");
  cmd->add_option("--seed", o.seed, "RNG seed (defaults to the scenario's)");
  cmd->add_option("--max-iter", o.max_iter, "Picard iteration limit");
  cmd->add_option("--x0", o.x0, "Start or candidate point v1,..,vd");
  cmd->add_option("--out", o.out, "Write the report to this path");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--trace", o.trace, "Write the Picard trace CSV to this path");
  cmd->add_option("--resolution", o.resolution, "Grid steps per constant (estimate)")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads for certification")->capture_default_str();
  cmd->add_flag("--three-point", o.three_point, "Also certify three-point tuples");
  cmd->add_flag("--timings", o.timings, "Record wall-clock timings in the report");
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, std::ostream& out,
                          std::ostream& err) {
  CommandResult result;
  CLI::App app{"Certify cyclic Kannan/Chatterjea contractions on G-metric spaces and solve them by "
               "Picard iteration",
               "gcyc"};
  app.require_subcommand(1, 1);
  Options o;
  using Handler = Run (*)(const Scenario&, const Options&, std::uint64_t);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands{
      {"check-axioms", "Property-check G1-G5 on sampled points", do_check_axioms},
      {"check-cyclic", "Check T(A_i) is contained in A_{i+1}", do_check_cyclic},
      {"certify", "Sampled certification of the contraction inequality", do_certify},
      {"estimate", "Search the admissible constants for the smallest factor", do_estimate},
      {"solve", "Picard iteration with residual diagnostics", do_solve},
      {"verify", "Check a candidate fixed point (--x0)", do_verify},
      {"report", "Run every check and a solve", do_report},
  };
  for (const auto& [name, help, fn] : commands) add_common(app.add_subcommand(name, help), o);

  std::vector<std::string> argv_store{"gcyc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    result.exit_code = kPass;
    return result;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    result.exit_code = kUsageError;
    return result;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Handler handler = nullptr;
  for (const auto& [name, help, fn] : commands)
    if (chosen->get_name() == name) handler = fn;

  try {
    const auto started = std::chrono::steady_clock::now();
    const Scenario scenario = resolve_scenario(o.scenario);
    const std::uint64_t seed = o.seed.value_or(scenario.defaults.seed);
    const auto loaded = std::chrono::steady_clock::now();
    Run run = handler(scenario, o, seed);
    const auto finished = std::chrono::steady_clock::now();

    Json rep;
    rep["command"] = chosen->get_name();
    rep["scenario_id"] = scenario.id;
    rep["seed"] = seed;
    rep["pass"] = run.pass;
    rep["details"] = std::move(run.details);
    rep["witnesses"] = std::move(run.witnesses);
    Json timings = Json::object();
    if (o.timings) {
      using ms = std::chrono::duration<double, std::milli>;
      timings["load_ms"] = ms(loaded - started).count();
      timings["run_ms"] = ms(finished - loaded).count();
    }
    rep["timings"] = std::move(timings);

    if (!o.trace.empty() && !run.trace_csv.empty()) {
      std::ofstream f(o.trace);
      if (!f) throw ConfigError("--trace", "cannot write " + o.trace, ConfigError::Code::Io);
      f << run.trace_csv;
      result.trace_csv_path = o.trace;
      rep["details"]["trace_csv"] = o.trace;
    }

    result.rendered = o.format == "csv" && !run.trace_csv.empty() ? run.trace_csv : render(rep, o.format);
    if (o.out.empty()) {
      out << result.rendered;
    } else {
      std::ofstream f(o.out);
      if (!f) throw ConfigError("--out", "cannot write " + o.out, ConfigError::Code::Io);
      f << result.rendered;
    }
    result.report = std::move(rep);
    result.exit_code = run.pass ? kPass : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    result.exit_code = kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kRuntimeError;
  }
  return result;
}

}  // namespace gcyc::cli
