// leray: command-line front end for the experiment drivers.
//
// Exit codes: 0 every check passed, 1 a check failed or the report could not be
// written, 2 usage or configuration error.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leray/leray.hpp"

namespace {

using namespace leray;

struct Options {
  std::string family = "quad";
  double m = 1.5;
  double p = 2.0;
  double a_measure = 0.0;
  std::vector<double> deltas;
  std::vector<double> eps;
  int inner_order = 16;
  int outer_order = 8;
  int levels = 12;
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  std::string mode = "model";
  std::string selector = "all";
  std::string output;
  std::string format = "json";
  int threads = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BoxFamily box_family(const Options& o) {
  if (o.family == "quad") return BoxFamily::Quad;
  if (o.family == "power") return BoxFamily::Power;
  throw UsageError("--family must be quad or power");
}

/// Effective configuration as echoed into reports. Thread count and output path are
/// left out so they never change an emitted byte.
Json echo(const std::string& command, const Options& o, const CLI::App& app) {
  Json j;
  j["command"] = command;
  j["family"] = o.family;
  if (o.family == "power") j["m"] = o.m;
  auto set = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (set("--p")) j["p"] = o.p;
  if (set("--a-measure")) j["a_measure"] = o.a_measure;
  if (set("--deltas")) j["deltas"] = o.deltas;
  if (set("--eps")) j["eps"] = o.eps;
  if (set("--inner-order")) j["inner_order"] = o.inner_order;
  if (set("--outer-order")) j["outer_order"] = o.outer_order;
  if (set("--levels")) j["levels"] = o.levels;
  j["seed"] = o.seed;
  if (set("--samples")) j["samples"] = o.samples;
  if (set("--mode")) j["mode"] = o.mode;
  if (set("--selector")) j["selector"] = o.selector;
  j["format"] = o.format;
  return j;
}

ExperimentReport run_command(const std::string& cmd, const Options& o, const CLI::App& app, int threads) {
  auto set = [&](const char* name) { return app.get_option(name)->count() > 0; };
  const BoxFamily fam = box_family(o);
  if (fam == BoxFamily::Power && !(o.m > 1.0 && o.m < 2.0)) throw UsageError("--m must lie in (1, 2)");
  BlowupConfig rule;
  rule.inner_order = o.inner_order;
  rule.outer_order = o.outer_order;
  rule.levels = o.levels;
  rule.threads = threads;

  if (cmd == "reproduce-blowup") {
    BlowupSweepConfig c;
    c.family = fam;
    c.m = o.m;
    c.p = o.p;
    c.a_measure = o.a_measure;
    if (set("--deltas")) c.deltas = o.deltas;
    if (o.mode == "model")
      c.mode = SweepMode::Model;
    else if (o.mode == "bounded-direct")
      c.mode = SweepMode::BoundedDirect;
    else
      throw UsageError("--mode must be model or bounded-direct");
    c.rule = rule;
    return blowup_sweep(c);
  }
  if (cmd == "reproduce-scaling-limit") {
    ScalingLimitConfig c = scaling_limit_defaults(fam);
    c.m = o.m;
    if (set("--eps")) c.eps = o.eps;
    if (set("--deltas")) {
      if (o.deltas.size() != 1) throw UsageError("reproduce-scaling-limit takes a single --deltas value");
      c.delta = o.deltas[0];
    }
    c.inner_order = o.inner_order;
    c.levels = o.levels;
    c.threads = threads;
    return scaling_limit(c);
  }
  if (cmd == "verify-kernel") {
    IdentityConfig ic;
    ic.m = o.m;
    ic.seed = o.seed;
    BoundConfig bc;
    bc.family = fam;
    bc.m = o.m;
    bc.seed = o.seed;
    if (set("--deltas")) bc.deltas = o.deltas;
    if (set("--samples")) {
      bc.samples = o.samples;
      ic.closed_form_pairs = o.samples;
    }
    ExperimentReport r;
    r.id = cmd;
    r.parts.push_back(identity_closed_form(ic));
    r.parts.push_back(bound_check(bc));
    return r;
  }
  if (cmd == "verify-measures") {
    MeasureAsymptoticsConfig c;
    c.family = fam;
    c.m = o.m;
    c.seed = o.seed;
    if (set("--deltas")) c.deltas = o.deltas;
    if (set("--inner-order")) c.order = o.inner_order;
    c.levels = o.levels;
    if (set("--samples")) c.samples = o.samples;
    return measure_asymptotics(c);
  }
  if (cmd == "verify-convexity") {
    ConvexityConfig c;
    c.m = o.m;
    c.seed = o.seed;
    if (set("--samples")) c.samples = o.samples;
    ExperimentReport r;
    r.id = cmd;
    r.parts.push_back(convexity_report(DomainSpec::bounded_quad(), c));
    r.parts.push_back(convexity_report(DomainSpec::bounded_power(o.m), c));
    r.parts.push_back(clinear_failure_demo({0.3, 0.1, 1e-3}));
    return r;
  }
  if (cmd == "verify-identities") {
    IdentityConfig c;
    c.m = o.m;
    c.seed = o.seed;
    if (set("--samples")) c.closed_form_pairs = o.samples;
    c.levels = o.levels;
    return identity_suite(identity_selector_from_string(o.selector), c);
  }
  if (cmd == "verify-reproducing") return reproducing_check({});
  throw UsageError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy-Leray transform experiments", "leray"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file with option defaults (flags override it)");

  Options o;
  app.add_option("--family", o.family, "quad | power")->check(CLI::IsMember({"quad", "power"}));
  app.add_option("--m", o.m, "power-family exponent in (1, 2)");
  app.add_option("--p", o.p, "L^p exponent, 1 <= p < infinity");
  app.add_option("--a-measure", o.a_measure, "exponent a of the norm measure mu_a (0 = induced Lebesgue)");
  app.add_option("--deltas", o.deltas, "comma-separated box scales, decreasing")->delimiter(',');
  app.add_option("--eps", o.eps, "comma-separated scaling parameters, decreasing")->delimiter(',');
  app.add_option("--inner-order", o.inner_order, "Gauss order on the support box")->check(CLI::Range(2, 60));
  app.add_option("--outer-order", o.outer_order, "Gauss order on S'")->check(CLI::Range(3, 64));
  app.add_option("--levels", o.levels, "dyadic grading levels toward t1 = 0")->check(CLI::Range(1, 40));
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "sample count for sampled checks")->check(CLI::PositiveNumber);
  app.add_option("--mode", o.mode, "model | bounded-direct")->check(CLI::IsMember({"model", "bounded-direct"}));
  app.add_option("--selector", o.selector, "identity suite selector");
  app.add_option("--output", o.output, "report path (default: standard output)");
  app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, std::string("worker threads (default: $") + kThreadsEnv + " or 1)")
      ->check(CLI::Range(1, 1024));

  const std::vector<std::string> commands{"verify-kernel",    "verify-measures",         "verify-convexity",
                                          "verify-identities", "reproduce-blowup",        "reproduce-scaling-limit",
                                          "verify-reproducing"};
  for (const auto& c : commands) app.add_subcommand(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const int threads = o.threads > 0 ? o.threads : default_threads();

  ExperimentReport rep;
  try {
    rep = run_command(cmd, o, app, threads);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  rep.params["cli"] = echo(cmd, o, app);

  const Format fmt = o.format == "csv" ? Format::Csv : Format::Json;
  try {
    if (o.output.empty())
      std::cout << render(rep, fmt);
    else
      emit_report(rep, fmt, o.output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& c : rep.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  for (const auto& p : rep.parts)
    for (const auto& c : p.checks) std::cerr << (c.pass ? "PASS " : "FAIL ") << p.id << ": " << c.name << "\n";
  return rep.pass() ? 0 : 1;
}
