#include "penlq/cli.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "penlq/error.hpp"
#include "penlq/io.hpp"

namespace penlq::cli {

namespace {

using io::json;

struct Options {
  CliConfig cfg;
  double q = 2.0;
  double lambda = 1.0;
  int grid_exp = 20;
  std::string mode = "structured";
  int restarts = 1;
};

void emit(std::ostream& out, const std::string& path, const json& doc) {
  if (path.empty() || path == "-") {
    out << doc.dump(2) << '\n';
  } else {
    io::write_json_file(path, doc);
  }
}

void note(const Options& o, std::ostream& err, const std::string& msg) {
  if (o.cfg.verbosity > 0) err << "penlq: " << msg << '\n';
}

int cmd_penalty_check(const Options& o, std::ostream& out) {
  const PenaltySpec spec = io::penalty_from_json(io::read_json_file(o.cfg.spec));
  const ConditionReport report = check_theorem1(spec, o.cfg.grid);
  json doc = io::to_json(report);
  doc["penalty"] = io::to_json(spec);
  out << doc.dump(2) << '\n';
  return report.overall ? kOk : kConditionViolation;
}

int cmd_penalty_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
  const PenaltySpec spec = io::penalty_from_json(io::read_json_file(o.cfg.spec));
  note(o, err, "fuzzing " + std::to_string(o.cfg.trials) + " trials per lemma");
  const Lemma1FuzzReport l1 = fuzz_lemma1(spec, o.cfg.trials, o.cfg.seed);
  const Lemma2FuzzReport l2 = fuzz_lemma2(spec, o.cfg.trials, o.cfg.seed);
  json doc = {{"penalty", io::to_json(spec)},
              {"subadditivity", io::to_json(l1)},
              {"localization", io::to_json(l2)}};
  out << doc.dump(2) << '\n';
  return (l1.violations == 0 && l2.counterexamples == 0) ? kOk : kTheoremViolation;
}

int cmd_gfun_analyze(const Options& o, std::ostream& out) {
  const PenaltySpec spec = io::penalty_from_json(io::read_json_file(o.cfg.spec));
  const PenaltyAnalysis an = analyze(spec);
  out << io::to_json(prepare_g(spec, an, o.q, o.lambda, o.grid_exp)).dump(2) << '\n';
  return kOk;
}

// The input is either a bare {"m", "b"} instance or {"tp", "penalty", "q",
// "lambda"}; command-line flags fill in whatever the file leaves out.
int cmd_reduce_build(const Options& o, const CLI::App& sub, std::ostream& out) {
  const json in = io::read_json_file(o.cfg.input);
  const bool wrapped = in.is_object() && in.contains("tp");
  const ThreePartitionInstance tp = io::tp_from_json(wrapped ? in.at("tp") : in);

  json penalty_doc;
  if (!o.cfg.spec.empty()) {
    penalty_doc = io::read_json_file(o.cfg.spec);
  } else if (wrapped && in.contains("penalty")) {
    penalty_doc = in.at("penalty");
  } else {
    throw InvalidInstance("reduce build: no penalty given (use --spec or a \"penalty\" field)");
  }
  const PenaltySpec spec = io::penalty_from_json(penalty_doc);

  double q = o.q;
  double lambda = o.lambda;
  if (wrapped && sub.count("--q") == 0 && in.contains("q")) q = in.at("q").get<double>();
  if (wrapped && sub.count("--lambda") == 0 && in.contains("lambda")) {
    lambda = in.at("lambda").get<double>();
  }
  const ReductionInstance red = build(tp, spec, q, lambda, o.grid_exp);
  emit(out, o.cfg.output, io::instance_to_json(red, o.grid_exp));
  return kOk;
}

// Exit 0 when an equitable partition's certificate attains the bound, 3 for
// a non-equitable partition (its certificate is reported but proves nothing),
// 4 if an equitable certificate misses the bound.
int cmd_certify(const Options& o, std::ostream& out) {
  const ReductionInstance red = io::instance_from_json(io::read_json_file(o.cfg.input));
  const Partition part = io::partition_from_json(red.tp, io::read_json_file(o.cfg.partition));
  const bool equitable = verify_equitable(red.tp, part);
  const SolutionMatrix x = encode_certificate(red, part);
  const double value = objective(red, x);
  const double bound = optimal_bound(red);
  const json doc = {{"x", x.entries},
                    {"value", value},
                    {"bound", bound},
                    {"difference", value - bound},
                    {"equitable", equitable},
                    {"partition", io::partition_to_json(part)},
                    {"sums", part.sums}};
  emit(out, o.cfg.output, doc);
  if (!equitable) return kUnknown;
  return std::abs(value - bound) <= 1e-9 ? kOk : kTheoremViolation;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const ReductionInstance red = io::instance_from_json(io::read_json_file(o.cfg.input));
  SolveBudget budget;
  budget.mode = o.mode == "hybrid" ? SolveMode::Hybrid : SolveMode::Structured;
  budget.restarts = o.restarts;
  budget.seed = o.cfg.seed;
  const auto start = std::chrono::steady_clock::now();
  const SolveResult result = solve(red, budget);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  note(o, err, "solved in " + std::to_string(elapsed.count()) + " s");
  emit(out, o.cfg.output, io::solution_to_json(result));
  return kOk;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const ReductionInstance red = io::instance_from_json(io::read_json_file(o.cfg.input));
  const SolutionMatrix x = io::solution_from_json(red, io::read_json_file(o.cfg.solution));
  const Decision d = decide(red, x);
  out << io::to_json(d).dump(2) << '\n';
  return d.verdict == Verdict::Yes ? kOk : kUnknown;
}

void line(std::ostream& out, const char* name, const char* formula, double value) {
  out << "  " << std::left << std::setw(13) << name << std::setw(64) << formula << "= " << value
      << '\n';
}

int cmd_demo(const Options& o, std::ostream& out) {
  const PenaltySpec spec = PenaltySpec::mcp(1.0, 1.0);
  const ThreePartitionInstance tp = ThreePartitionInstance::make(2, {1, 2, 3, 1, 2, 3});
  const double q = 2.0;
  const double lambda = 1.0;
  const ReductionInstance red = build(tp, spec, q, lambda, o.grid_exp);
  const PenaltyAnalysis& an = red.analysis;

  out << std::setprecision(10);
  out << "penalty: MCP, gamma = 1, b = 1, p(t) = t - t^2/2 on [0,1], 1/2 beyond\n";
  out << "3-partition: m = 2, b = (1, 2, 3, 1, 2, 3), B = " << tp.B << "\n";
  out << "q = " << q << ", lambda = " << lambda << "\n\n";

  out << "penalty constants\n";
  line(out, "tau", "0.8 min(gamma, b gamma)", an.tau);
  line(out, "tau0", "0.6 min(gamma, b gamma)", an.tau0);
  out << "  " << std::left << std::setw(13) << "tau_hat" << std::setw(64)
      << "rational near (tau0 + tau)/2" << "= " << an.tau_hat.str() << '\n';
  line(out, "C1", "(p(tau0/3) + p(2 tau0/3) - p(tau0)) / (tau0/3)", an.C1);
  line(out, "K", "max of -p'' on [tau0, tau]", an.K);

  out << "\nsurrogate g(t) = p(|t|) + theta |t|^q + mu |t - tau_hat|^q\n";
  line(out, "theta_lower", "(1 + K) / (q (q-1) min(tau0^(q-2), tau^(q-2)))",
       red.ganalysis.theta_lower);
  line(out, "mu_lower", "(p(tau_hat) + theta tau_hat^q + 1) / (theta |tau0 - tau_hat|^q)",
       red.ganalysis.mu_lower);
  line(out, "theta", "theta >= theta_lower, (lambda theta)^(1/q) rational",
       red.gparams.theta);
  line(out, "mu", "mu >= mu_lower theta, (lambda mu)^(1/q) rational", red.gparams.mu);
  line(out, "t*", "argmin of g on [tau0, tau] (golden section)", red.ganalysis.t_star);
  line(out, "h", "g(t*)", red.ganalysis.h);
  line(out, "delta_bar", "min(tau0/3, (t*-tau0)/2, (tau-t*)/2, 1, C1)", red.ganalysis.delta_bar);
  line(out, "delta", "min(tau0 / (8 sum b), delta_bar)", red.delta);
  line(out, "epsilon", "min(lambda delta^2, (tau0/2)^q)", red.epsilon);
  line(out, "bound", "n lambda h", optimal_bound(red));

  out << "\ninstance: " << red.problem.A.rows() << " x " << red.problem.A.cols() << '\n';

  const Partition part = make_partition(tp, {{0, 1, 2}, {3, 4, 5}});
  const double cert = objective(red, encode_certificate(red, part));
  out << "\ncertify {1,2,3} | {4,5,6}\n";
  line(out, "objective", "F(certificate)", cert);
  line(out, "difference", "F(certificate) - n lambda h", cert - optimal_bound(red));

  const SolveResult sol = solve(red, SolveBudget{SolveMode::Structured, 0, o.cfg.seed});
  out << "\nsolve (structured, " << sol.assignments_explored << " assignments, "
      << sol.equitable_assignments << " attain the bound)\n";
  line(out, "value", "min over {0, t*} assignments", sol.value);
  line(out, "gap", "value - n lambda h", sol.gap);

  const Decision d = decide(red, sol.x);
  out << "\ndecode\n";
  out << "  verdict      " << (d.verdict == Verdict::Yes ? "Yes" : "Unknown") << '\n';
  if (d.partition) {
    out << "  partition    " << io::partition_to_json(*d.partition).dump() << ", sums "
        << json(d.partition->sums).dump() << '\n';
  }
  return d.verdict == Verdict::Yes ? kOk : kUnknown;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Executable hardness reduction for regularized Lq minimization with concave penalties",
               "penlq"};
  app.require_subcommand(1);
  app.add_option("--seed", o.cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", o.cfg.trials, "Random trials per fuzz test")->capture_default_str();
  app.add_option("--grid", o.cfg.grid, "Grid points for condition checks")->capture_default_str();
  app.add_flag("-v,--verbose", o.cfg.verbosity, "Print progress to stderr");

  auto* penalty = app.add_subcommand("penalty", "Penalty condition checks");
  penalty->require_subcommand(1);
  penalty->fallthrough();
  auto* check = penalty->add_subcommand("check", "Check the hardness conditions on a penalty");
  check->add_option("--spec", o.cfg.spec, "Penalty JSON file")->required();
  check->fallthrough();
  auto* fuzz = penalty->add_subcommand("fuzz", "Random tests of subadditivity and localization");
  fuzz->add_option("--spec", o.cfg.spec, "Penalty JSON file")->required();
  fuzz->fallthrough();

  auto* gfun = app.add_subcommand("gfun", "One-dimensional surrogate analysis");
  gfun->require_subcommand(1);
  gfun->fallthrough();
  auto* ganalyze = gfun->add_subcommand("analyze", "Print theta, mu, t*, h and delta_bar");
  ganalyze->add_option("--spec", o.cfg.spec, "Penalty JSON file")->required();
  ganalyze->add_option("--q", o.q, "Exponent q >= 1")->capture_default_str();
  ganalyze->add_option("--lambda", o.lambda, "Regularization weight > 0")->capture_default_str();
  ganalyze->add_option("--grid-exp", o.grid_exp, "Dyadic grid exponent for the roots")
      ->capture_default_str();
  ganalyze->fallthrough();

  auto* reduce = app.add_subcommand("reduce", "Reduction instances");
  reduce->require_subcommand(1);
  reduce->fallthrough();
  auto* rbuild = reduce->add_subcommand("build", "Build the Lq instance of a 3-partition instance");
  rbuild->add_option("--in", o.cfg.input, "3-partition JSON file")->required();
  rbuild->add_option("--spec", o.cfg.spec, "Penalty JSON file");
  rbuild->add_option("--q", o.q, "Exponent q >= 1")->capture_default_str();
  rbuild->add_option("--lambda", o.lambda, "Regularization weight > 0")->capture_default_str();
  rbuild->add_option("--grid-exp", o.grid_exp, "Dyadic grid exponent for the roots")
      ->capture_default_str();
  rbuild->add_option("--out", o.cfg.output, "Output file (default stdout)");
  rbuild->fallthrough();

  auto* certify = app.add_subcommand("certify", "Evaluate the certificate of a partition");
  certify->add_option("--in", o.cfg.input, "Instance JSON file")->required();
  certify->add_option("--partition", o.cfg.partition, "Partition JSON file (1-based items)")
      ->required();
  certify->add_option("--out", o.cfg.output, "Output file (default stdout)");
  certify->fallthrough();

  auto* solve_cmd = app.add_subcommand("solve", "Minimize a reduction instance");
  solve_cmd->add_option("--in", o.cfg.input, "Instance JSON file")->required();
  solve_cmd->add_option("--mode", o.mode, "structured or hybrid")
      ->check(CLI::IsMember({"structured", "hybrid"}))
      ->capture_default_str();
  solve_cmd->add_option("--restarts", o.restarts, "Hybrid polishing runs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve_cmd->add_option("--out", o.cfg.output, "Output file (default stdout)");
  solve_cmd->fallthrough();

  auto* decode = app.add_subcommand("decode", "Decode a solution into a partition");
  decode->add_option("--in", o.cfg.input, "Instance JSON file")->required();
  decode->add_option("--sol", o.cfg.solution, "Solution JSON file")->required();
  decode->fallthrough();

  auto* demo = app.add_subcommand("demo", "Run the MCP worked example end to end");
  demo->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_penalty_check(o, out);
    if (fuzz->parsed()) return cmd_penalty_fuzz(o, out, err);
    if (ganalyze->parsed()) return cmd_gfun_analyze(o, out);
    if (rbuild->parsed()) return cmd_reduce_build(o, *rbuild, out);
    if (certify->parsed()) return cmd_certify(o, out);
    if (solve_cmd->parsed()) return cmd_solve(o, out, err);
    if (decode->parsed()) return cmd_decode(o, out);
    if (demo->parsed()) return cmd_demo(o, out);
  } catch (const ConditionViolation& e) {
    err << "penlq: condition violation: " << e.what() << '\n';
    return kConditionViolation;
  } catch (const TheoremViolation& e) {
    err << "penlq: theorem violation: " << e.what() << '\n';
    return kTheoremViolation;
  } catch (const SizeError& e) {
    err << "penlq: " << e.what() << '\n';
    return kSizeGuard;
  } catch (const std::exception& e) {
    err << "penlq: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace penlq::cli
