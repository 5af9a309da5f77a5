#include "cli.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harnack/errors.hpp"
#include "harnack/suites.hpp"
#include "harnack/sweep.hpp"

namespace harnack::cli {

namespace {

struct Options {
  std::string tolerance_file;
  std::string out_file;

  std::string spec_file;

  std::string lhs_file;
  std::string rhs_file;
  std::string relation = "harnack";
  std::vector<double> radii;
  int angles = 128;
  bool no_zero = false;
  int order = 32;
  double cap = std::numeric_limits<double>::infinity();

  std::string op_file;

  std::string suite_name;
  std::uint64_t seed = 1;
  int cases = 10;

  std::string family;
  int n = 64;
  std::vector<double> values;
  std::vector<double> reference;
};

ContractionMatrix load_operator(const std::string& path, const TolerancePolicy& tol) {
  const Json j = parse_json(read_text_file(path), path);
  ContractionMatrix t = materialize(spec_from_json(j), tol);
  if (j.contains("label") && j["label"].is_string())
    t = t.relabeled(j["label"].get<std::string>());
  return t;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_file.empty())
    out << text;
  else
    write_text_file(o.out_file, text);
}

GridSpec grid_from(const Options& o) {
  GridSpec g;
  if (!o.radii.empty())
    g.radii = o.radii;
  g.angles_per_radius = o.angles;
  g.include_zero = !o.no_zero;
  g.validate();
  return g;
}

int cmd_gen(const Options& o, const TolerancePolicy& tol, std::ostream& out) {
  const Json j = parse_json(read_text_file(o.spec_file), o.spec_file);
  const ContractionMatrix t = materialize(spec_from_json(j), tol);
  emit(o, dump_json(operator_to_json(t)), out);
  return exit_ok;
}

int cmd_check(const Options& o, const TolerancePolicy& tol, std::ostream& out) {
  const ContractionMatrix t = load_operator(o.lhs_file, tol);
  const ContractionMatrix tp = load_operator(o.rhs_file, tol);
  if (t.dim() != tp.dim())
    fail_invalid("check: operators have different dimensions");
  if (!(o.cap > 0.0))
    fail_invalid("check: --cap must be positive");

  Json report;
  DominationCertificate cert;
  if (o.relation == "harnack") {
    cert = harnack_constant_poisson(t.entries(), tp.entries(), grid_from(o), tol);
    report["certificate"] = certificate_to_json(cert);
  } else if (o.relation == "z") {
    cert = z_constant(t.entries(), tp.entries(), tol);
    report["certificate"] = certificate_to_json(cert);
  } else if (o.relation == "resolvent") {
    cert = resolvent_estimate_constant(t.entries(), tp.entries(), grid_from(o), tol);
    report["certificate"] = certificate_to_json(cert);
  } else if (o.relation == "moment") {
    cert = harnack_constant_moment(t.entries(), tp.entries(), o.order, tol);
    report["certificate"] = certificate_to_json(cert);
  } else if (o.relation == "mobius") {
    const MobiusProfile profile = mobius_z_profile(t.entries(), tp.entries(), grid_from(o), tol);
    cert = profile.summary;
    report["certificate"] = mobius_profile_to_json(profile);
  } else {
    fail_invalid("check: unknown relation '" + o.relation + "'");
  }

  std::string verdict = "feasible";
  if (!cert.feasible)
    verdict = "infeasible";
  else if (!(cert.constant <= o.cap))
    verdict = "exceeds_cap";
  report["lhs"] = t.label();
  report["rhs"] = tp.label();
  report["dim"] = t.dim();
  report["verdict"] = verdict;
  report["cap"] = real_to_json(o.cap);
  report["tolerance"] = tolerance_to_json(tol);
  emit(o, dump_json(report), out);
  return verdict == "feasible" ? exit_ok : exit_infeasible;
}

int cmd_classify(const Options& o, const TolerancePolicy& tol, std::ostream& out) {
  const ContractionMatrix t = load_operator(o.op_file, tol);
  Json report;
  report["label"] = t.label();
  report["dim"] = t.dim();
  report["flags"] = classification_to_json(classify_contraction(t.entries(), tol));
  report["spectral"] = spectral_report_to_json(spectral_report(t.entries(), tol));
  report["tolerance"] = tolerance_to_json(tol);
  emit(o, dump_json(report), out);
  return exit_ok;
}

int cmd_suite(const Options& o, const TolerancePolicy& tol, std::ostream& out) {
  const SuiteReport r = run_suite(o.suite_name, o.seed, o.cases, tol);
  emit(o, dump_json(suite_report_to_json(r)), out);
  return r.all_pass() ? exit_ok : exit_infeasible;
}

int cmd_sweep(const Options& o, const TolerancePolicy& tol, std::ostream& out) {
  SweepSpec s;
  s.family = o.family;
  s.n = o.n;
  s.grid = grid_from(o);
  s.values = o.values;
  if (s.values.empty())
    for (int i = 0; i < 10; ++i)
      s.values.push_back(0.1 * i);
  if (!o.reference.empty()) {
    if (o.reference.size() != 2)
      fail_invalid("sweep: --reference takes re,im");
    s.reference = {o.reference[0], o.reference[1]};
  }
  emit(o, run_sweep_csv(s, tol), out);
  return exit_ok;
}

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--radii", o.radii, "Grid radii, ascending, in (0, 1)")->delimiter(',');
  cmd->add_option("--angles", o.angles, "Uniform angles per radius (>= 8)");
  cmd->add_flag("--no-zero", o.no_zero, "Leave lambda = 0 out of the grid");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Harnack and Z-domination toolkit for finite-dimensional contractions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--tolerances", o.tolerance_file, "JSON file overriding tolerance policy fields");

  CLI::App* gen = app.add_subcommand("gen", "Materialize an operator spec into a dense operator file");
  gen->add_option("spec", o.spec_file, "Operator spec JSON")->required();

  CLI::App* check = app.add_subcommand("check", "Certify that LHS is dominated by RHS");
  check->add_option("lhs", o.lhs_file, "Operator file of the dominated operator T")->required();
  check->add_option("rhs", o.rhs_file, "Operator file of the dominating operator T'")->required();
  check->add_option("--relation", o.relation, "harnack | z | resolvent | moment | mobius")
      ->check(CLI::IsMember({"harnack", "z", "resolvent", "moment", "mobius"}));
  add_grid_flags(check, o);
  check->add_option("--order", o.order, "Largest block order for --relation moment");
  check->add_option("--cap", o.cap, "Report constants above this value as exceeding the cap (exit 2)");

  CLI::App* classify = app.add_subcommand("classify", "Class flags and spectral report of one operator");
  classify->add_option("op", o.op_file, "Operator file")->required();

  CLI::App* suite = app.add_subcommand("suite", "Run a seeded property suite");
  suite->add_option("--name", o.suite_name, "Suite name")->required();
  suite->add_option("--seed", o.seed, "Seed");
  suite->add_option("--cases", o.cases, "Number of cases");
  std::string names;
  for (const auto& s : suite_names())
    names += (names.empty() ? "" : ", ") + s;
  suite->footer("Suites: " + names);

  CLI::App* sweep = app.add_subcommand("sweep", "Grid constants per radius as CSV");
  sweep->add_option("--family", o.family, "t-alpha-family | scalar | halperin-diag")->required();
  sweep->add_option("--n", o.n, "Dimension (t-alpha-family) or shift length (halperin-diag)");
  sweep->add_option("--values", o.values, "Swept parameter values (default 0, 0.1, ..., 0.9)")->delimiter(',');
  sweep->add_option("--reference", o.reference, "alpha of T' for t-alpha-family as re,im")->delimiter(',');
  add_grid_flags(sweep, o);

  for (CLI::App* sub : {gen, check, classify, suite, sweep})
    sub->add_option("-o,--out", o.out_file, "Write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }

  try {
    TolerancePolicy tol;
    if (!o.tolerance_file.empty())
      tol = tolerance_from_json(parse_json(read_text_file(o.tolerance_file), o.tolerance_file));
    tol.validate();
    if (gen->parsed())
      return cmd_gen(o, tol, out);
    if (check->parsed())
      return cmd_check(o, tol, out);
    if (classify->parsed())
      return cmd_classify(o, tol, out);
    if (suite->parsed())
      return cmd_suite(o, tol, out);
    return cmd_sweep(o, tol, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::numerical_failure ? exit_numerical : exit_invalid;
  } catch (const std::exception& e) {
    err << "error (numerical-failure): " << e.what() << "\n";
    return exit_numerical;
  }
}

} // namespace harnack::cli
