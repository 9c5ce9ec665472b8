// samlab: experiment front end for the SAM optimization lab.
//
// Subcommands: list-functions, run, sweep, virtual, check, reproduce.
// Exit codes: 0 success / check passed, 1 usage error, 2 divergence guard,
// 3 check failed.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "samlab/catalog.h"
#include "samlab/errors.h"
#include "samlab/experiment.h"
#include "samlab/figures.h"
#include "samlab/harness.h"
#include "samlab/schedules.h"
#include "samlab/trajectory.h"
#include "samlab/virtual_loss.h"

namespace {

using nlohmann::json;
using namespace samlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitCheckFailed = 3;

uint64_t default_seed() {
  if (const char* env = std::getenv("SAMLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw UsageError(std::string("SAMLAB_SEED is not a valid integer: ") + env);
    }
  }
  return 42;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw UsageError("malformed point: " + text);
    out.push_back(std::stod(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',')
      flush();
    else
      cur.push_back(ch);
  }
  flush();
  return out;
}

std::vector<long> parse_sweep(const std::string& text) {
  std::vector<long> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw UsageError("malformed sweep list: " + text);
    out.push_back(std::stol(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',')
      flush();
    else
      cur.push_back(ch);
  }
  flush();
  return out;
}

Vec vec_from(const std::vector<double>& v) {
  if (v.size() == 1) return Vec(v[0]);
  if (v.size() == 2) return Vec(v[0], v[1]);
  throw UsageError("points must have 1 or 2 coordinates");
}

json function_json(const FunctionSpec& fn) {
  json j;
  j["id"] = fn.id;
  j["beta"] = fn.beta;
  j["mu"] = fn.mu;
  j["rho"] = fn.rho;
  j["sigma"] = fn.sigma;
  j["p"] = fn.p;
  j["c"] = fn.c < 0.0 ? 2.0 * fn.rho : fn.c;
  if (fn.noise > 0.0) j["noise"] = fn.noise;
  return j;
}

void print_resolved(const json& j) { std::cout << "resolved config: " << j.dump() << std::endl; }

std::string catalog_help() {
  std::string s = "function ids: ";
  for (const auto& e : catalog_entries()) s += e.id + " ";
  return s;
}

std::string theorem_help() {
  return "theorem ids: thm31 thm33 thm34 thm41 thm44 thm46 thm47 (bound domination), "
         "thm32 (lower-bound rate), thm35 (nonconvex floor), thm36 (nonsmooth escape), "
         "thm42 (trapped interval, strongly convex), thm45 (trapped interval, convex)";
}

struct FunctionFlags {
  std::string id;
  double beta = 1.0;
  double mu = 0.5;
  double sigma = 1.0;
  double p = 0.75;
  double c = -1.0;
  double noise = 0.0;

  void attach(CLI::App* cmd, bool id_required) {
    auto* opt = cmd->add_option("--fn", id, "catalog function id");
    if (id_required) opt->required();
    cmd->add_option("--beta", beta, "smoothness parameter of the construction");
    cmd->add_option("--mu", mu, "strong convexity parameter (quad-lb-1)");
    cmd->add_option("--sigma", sigma, "gradient variance bound (mixtures)");
    cmd->add_option("--p", p, "component probability (cvx-counter)");
    cmd->add_option("--c", c, "basin center (cvx-counter; default 2*rho)");
    cmd->add_option("--noise", noise,
                    "wrap a deterministic function with +-noise gradient components");
  }

  FunctionSpec spec(double rho) const {
    FunctionSpec fn;
    fn.id = id;
    fn.beta = beta;
    fn.mu = mu;
    fn.rho = rho;
    fn.sigma = sigma;
    fn.p = p;
    fn.c = c;
    fn.noise = noise;
    return fn;
  }
};

int cmd_list_functions() {
  std::cout << "catalog functions:\n";
  for (const auto& e : catalog_entries()) {
    std::cout << "  " << e.id << "  (d=" << e.dim << (e.stochastic ? ", stochastic" : "")
              << ")  " << e.summary << "  [parameters: " << e.parameters << "]\n";
  }
  std::cout << "\n" << theorem_help() << "\n";
  return kExitOk;
}

int cmd_run(const FunctionFlags& fn_flags, const std::string& opt_name, double rho, double eta,
            const std::string& x0_text, long steps, uint64_t seed, const std::string& out) {
  FunctionSpec fn = fn_flags.spec(rho);
  Objective obj = build_objective(fn);

  OptimizerConfig opt;
  opt.variant = variant_from_name(opt_name);
  opt.rho = rho;
  opt.eta = eta;
  opt.seed = seed;

  std::vector<double> x0 =
      x0_text.empty() ? std::vector<double>(static_cast<size_t>(obj.dim()), 1.0)
                      : parse_point(x0_text);

  json resolved;
  resolved["command"] = "run";
  resolved["function"] = function_json(fn);
  resolved["optimizer"] = {{"variant", variant_name(opt.variant)},
                           {"rho", opt.rho},
                           {"eta", opt.eta},
                           {"zero_grad_eps", opt.zero_grad_eps},
                           {"seed", opt.seed}};
  resolved["x0"] = x0;
  resolved["steps"] = steps;
  if (!out.empty()) resolved["out"] = out;
  print_resolved(resolved);

  Trajectory traj = run_trajectory(obj, vec_from(x0), opt, steps);
  if (!out.empty()) {
    save_trajectory_csv(traj, out);
    std::cout << "wrote " << out << "\n";
  }
  const Vec& xf = traj.final_iterate();
  std::cout << "final x = (";
  for (int i = 0; i < xf.dim(); ++i) std::cout << (i ? ", " : "") << format_double_17(xf[i]);
  std::cout << "), f = " << format_double_17(traj.f_values.back())
            << ", |grad f| = " << format_double_17(traj.grad_norms.back()) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const FunctionFlags& fn_flags,
              const std::string& opt_name, double rho, double eta, const std::string& x0_text,
              const std::string& sweep_text, int trials, const std::string& schedule,
              const std::string& metric_text, uint64_t seed, const std::string& out) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    // Config files are self-contained; the seed key defaults to 42 inside
    // the parser and is not overridden by --seed / SAMLAB_SEED.
    cfg = experiment_from_json_file(config_path);
  } else {
    cfg.function = fn_flags.spec(rho);
    cfg.optimizer.variant = variant_from_name(opt_name);
    cfg.optimizer.rho = rho;
    cfg.optimizer.eta = eta;
    cfg.optimizer.seed = seed;
    cfg.metric = metric_from_name(metric_text);
    if (!x0_text.empty()) cfg.x0 = parse_point(x0_text);
    cfg.sweep = parse_sweep(sweep_text);
    cfg.trials = trials;
    cfg.schedule = schedule;
  }

  json resolved = json::parse(experiment_to_json(cfg));
  resolved["command"] = "sweep";
  print_resolved(resolved);

  SweepResult result = sweep_and_fit(cfg);
  for (const auto& w : result.fit.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& p : result.points)
    std::cout << "T = " << p.T << "  eta = " << p.eta << "  metric = " << format_double_17(p.metric)
              << "\n";
  std::cout << "fit: exponent = " << format_double_17(result.fit.exponent)
            << ", intercept = " << format_double_17(result.fit.intercept)
            << ", r^2 = " << format_double_17(result.fit.r_squared) << "\n";

  if (!out.empty()) {
    json j;
    j["experiment"] = json::parse(experiment_to_json(cfg));
    j["exponent"] = result.fit.exponent;
    j["intercept"] = result.fit.intercept;
    j["r_squared"] = result.fit.r_squared;
    json pts = json::array();
    for (const auto& p : result.points)
      pts.push_back({{"T", p.T}, {"eta", p.eta}, {"metric", p.metric}});
    j["points"] = pts;
    j["warnings"] = result.fit.warnings;
    std::ofstream os(out);
    if (!os) throw UsageError("cannot open output file: " + out);
    os << j.dump(2) << '\n';
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_virtual(const FunctionFlags& fn_flags, double rho, double xmin, double xmax, double grid,
                bool no_integrate, int grid2d, const std::string& out) {
  FunctionSpec fn = fn_flags.spec(rho);
  Objective obj = build_objective(fn);
  const ObjectiveFunction& base = obj.mean();

  VirtualGradientMap map{base, rho, 1e-12};
  bool have_range = std::isfinite(xmin) && std::isfinite(xmax);
  double lo = have_range ? xmin : base.meta.box.lo[0];
  double hi = have_range ? xmax : base.meta.box.hi[0];
  double h = grid > 0.0 ? grid : rho / 1e4;

  json resolved;
  resolved["command"] = "virtual";
  resolved["function"] = function_json(fn);
  resolved["rho"] = rho;
  resolved["xmin"] = lo;
  resolved["xmax"] = hi;
  resolved["grid"] = h;
  resolved["no_integrate"] = no_integrate;
  resolved["out"] = out;
  print_resolved(resolved);

  if (base.dim == 1) {
    write_virtual_csv_1d(map, lo, hi, h, out);
  } else {
    if (!no_integrate)
      throw UsageError("virtual loss J_f is 1-D only; pass --no-integrate to dump G_f for a 2-D "
                       "function");
    write_virtual_csv_2d(map, base.meta.box, grid2d, out);
  }
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_reproduce(const std::string& fig_id, const std::string& out_dir, uint64_t seed) {
  json resolved;
  resolved["command"] = "reproduce";
  resolved["figure"] = fig_id;
  resolved["out"] = out_dir;
  resolved["seed"] = seed;
  print_resolved(resolved);

  FigureResult result = reproduce_figure(fig_id, out_dir, seed);
  for (const auto& a : result.artifacts) std::cout << "wrote " << a << "\n";
  if (fig_id == "fig1") {
    std::cout << "distance to (1,1): sam = " << result.sam_dist_to_flattest
              << ", gd = " << result.gd_dist_to_flattest
              << ", usam = " << result.usam_dist_to_flattest << "\n";
    std::cout << "|xy - 1| at final iterate: sam = " << result.sam_final_constraint
              << ", gd = " << result.gd_final_constraint
              << ", usam = " << result.usam_final_constraint << "\n";
  } else {
    std::cout << "final x = " << format_double_17(result.final_iterate[0]) << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& theorem_id, const FunctionFlags& fn_flags, double rho, double eta,
              const std::string& x0_text, const std::string& sweep_text, long steps, int trials,
              uint64_t seed, const std::string& out) {
  json resolved;
  resolved["command"] = "check";
  resolved["theorem"] = theorem_id;
  resolved["rho"] = rho;
  resolved["eta"] = eta;
  resolved["steps"] = steps;
  resolved["trials"] = trials;
  resolved["seed"] = seed;

  CheckReport report;

  if (theorem_id == "thm31" || theorem_id == "thm33" || theorem_id == "thm34" ||
      theorem_id == "thm41" || theorem_id == "thm44" || theorem_id == "thm46" ||
      theorem_id == "thm47") {
    ExperimentConfig cfg;
    FunctionFlags flags = fn_flags;
    if (flags.id.empty()) throw UsageError("check " + theorem_id + " requires --fn");
    // thm46/thm47 run stochastic SAM; wrap deterministic functions with the
    // gradient-noise mixture at the configured sigma.
    if ((theorem_id == "thm46" || theorem_id == "thm47") && flags.noise == 0.0) {
      bool stochastic_id = flags.id == "sc-counter" || flags.id == "cvx-counter";
      if (!stochastic_id) flags.noise = flags.sigma;
    }
    cfg.function = flags.spec(rho);
    cfg.optimizer.rho = rho;
    cfg.optimizer.seed = seed;
    cfg.optimizer.eta = eta;  // replaced per-T by the theorem schedule
    cfg.trials = trials;
    cfg.x0 = x0_text.empty() ? std::vector<double>{1.0} : parse_point(x0_text);
    cfg.sweep = sweep_text.empty() ? std::vector<long>{10, 100, 1000} : parse_sweep(sweep_text);
    resolved["function"] = function_json(cfg.function);
    resolved["x0"] = cfg.x0;
    resolved["sweep"] = cfg.sweep;
    print_resolved(resolved);
    report = check_bound_domination(theorem_id, cfg);
  } else if (theorem_id == "thm32") {
    std::vector<long> sweep =
        sweep_text.empty() ? std::vector<long>{16, 32, 64, 128, 256, 512, 1024}
                           : parse_sweep(sweep_text);
    resolved["beta"] = fn_flags.beta;
    resolved["sweep"] = sweep;
    print_resolved(resolved);
    report = check_lower_bound_rate(fn_flags.beta, rho, sweep);
  } else if (theorem_id == "thm35") {
    FunctionSpec fn = fn_flags.spec(rho);
    if (fn.id.empty()) fn.id = "sine";
    if (fn.id != "sine") throw UsageError("check thm35 runs on the sine function");
    Objective obj = build_objective(fn);
    OptimizerConfig opt;
    opt.variant = Variant::DetSam;
    opt.rho = rho;
    opt.eta = eta > 0.0 ? eta : 0.5;
    opt.seed = seed;
    Vec x0 = x0_text.empty() ? Vec(0.4 * rho) : vec_from(parse_point(x0_text));
    resolved["function"] = function_json(fn);
    resolved["x0"] = {x0[0]};
    print_resolved(resolved);

    VirtualGradientMap map{obj.mean(), rho, opt.zero_grad_eps};
    StationarySets sets = find_stationary_sets(map, x0[0] - 2.0 * rho, x0[0] + 2.0 * rho, rho / 1e4);
    report = check_floor(obj, opt, x0, steps, trials, sets.true_stationary);

    // Pass iff the run settles on a spurious stationary point (a G_f zero
    // with nonzero gradient) while staying Omega(rho) away from set X.
    double final_x = 0.0, tail_dist = 0.0;
    for (const auto& [k, v] : report.margins) {
      if (k == "final_x0") final_x = v;
      if (k == "tail_min_distance_to_stationary") tail_dist = v;
    }
    double nearest_spurious = std::numeric_limits<double>::infinity();
    for (double y : sets.spurious_stationary)
      nearest_spurious = std::min(nearest_spurious, std::abs(final_x - y));
    report.margins.emplace_back("distance_to_nearest_spurious", nearest_spurious);
    report.pass = nearest_spurious <= 1e-6 && tail_dist >= 0.1 * rho;
    if (!report.pass) report.notes.push_back("final iterate did not settle on a set-Y point");
  } else if (theorem_id == "thm36") {
    OptimizerConfig opt;
    opt.variant = Variant::DetSam;
    opt.rho = rho;
    opt.eta = eta > 0.0 ? eta : 0.5;
    opt.seed = seed;
    Vec x0 = x0_text.empty() ? Vec(-5.0, 0.0) : vec_from(parse_point(x0_text));
    resolved["x0"] = {x0[0], x0[1]};
    print_resolved(resolved);
    report = check_nonsmooth_escape(opt, x0, steps);
  } else if (theorem_id == "thm42" || theorem_id == "thm45") {
    CounterexampleParams params =
        theorem_id == "thm42"
            ? CounterexampleParams::strongly_convex(rho, fn_flags.beta, fn_flags.sigma)
            : CounterexampleParams::convex(rho, fn_flags.beta, fn_flags.sigma, fn_flags.p,
                                           fn_flags.c);
    StochasticObjective obj = theorem_id == "thm42" ? make_sc_counterexample(params)
                                                    : make_cvx_counterexample(params);
    OptimizerConfig opt;
    opt.variant = Variant::MSam;
    opt.rho = rho;
    opt.eta = eta > 0.0 ? eta : (theorem_id == "thm42" ? 0.3 / params.beta : 1.0 / params.beta);
    opt.seed = seed;
    Vec x0 = x0_text.empty() ? Vec(params.c) : vec_from(parse_point(x0_text));
    resolved["params"] = {{"p", params.p}, {"c", params.c}, {"a", params.a},
                          {"c_prime", params.c_prime}, {"beta", params.beta},
                          {"sigma", params.sigma}};
    resolved["x0"] = {x0[0]};
    print_resolved(resolved);
    report = check_trapped_interval(obj, params, opt, steps, trials, x0);

    // Containment implies the analytic floors; report and enforce them.
    double min_dist = 0.0, min_subopt = 0.0;
    for (const auto& [k, v] : report.margins) {
      if (k == "min_distance_to_optimum") min_dist = v;
      if (k == "min_suboptimality") min_subopt = v;
    }
    double dist_floor, subopt_floor;
    if (theorem_id == "thm42") {
      dist_floor = rho / 6.0;
      subopt_floor = params.a * rho * rho / 72.0;
    } else {
      dist_floor = params.c - rho + params.a / params.beta;
      subopt_floor = params.a * (params.c - rho) + params.a * params.a / (2.0 * params.beta);
    }
    report.margins.emplace_back("distance_floor", dist_floor);
    report.margins.emplace_back("suboptimality_floor", subopt_floor);
    if (report.pass &&
        (min_dist < dist_floor * (1.0 - 1e-12) || min_subopt < subopt_floor * (1.0 - 1e-12))) {
      report.pass = false;
      report.notes.push_back("analytic floor violated despite containment");
    }
  } else {
    throw UsageError("unknown theorem id: " + theorem_id + "; " + theorem_help());
  }

  std::cout << report_to_json(report) << "\n";
  if (!out.empty()) {
    write_report(report, out);
    std::cout << "wrote " << out << "\n";
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"samlab: SAM convergence laboratory.\n" + catalog_help() + "\n" + theorem_help()};
  app.require_subcommand(1);

  uint64_t seed = 0;
  bool seed_given = false;

  // list-functions
  auto* list_cmd = app.add_subcommand("list-functions", "list catalog function ids");

  // run
  auto* run_cmd = app.add_subcommand("run", "run one trajectory and write a CSV");
  FunctionFlags run_fn;
  run_fn.attach(run_cmd, /*id_required=*/true);
  std::string run_opt = "det-sam", run_x0, run_out;
  double run_rho = 1.0, run_eta = 0.1;
  long run_steps = 1000;
  run_cmd->add_option("--opt", run_opt, "optimizer: gd, usam, det-sam, n-sam, m-sam");
  run_cmd->add_option("--rho", run_rho, "perturbation size");
  run_cmd->add_option("--eta", run_eta, "step size");
  run_cmd->add_option("--x0", run_x0, "start point, comma separated");
  run_cmd->add_option("--steps", run_steps, "number of steps T");
  run_cmd->add_option("--out", run_out, "trajectory CSV path");
  run_cmd->add_option("--seed", seed, "PRNG seed (default SAMLAB_SEED or 42)")
      ->each([&](const std::string&) { seed_given = true; });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep horizons and fit a power law");
  FunctionFlags sweep_fn;
  sweep_fn.attach(sweep_cmd, /*id_required=*/false);
  std::string sweep_config, sweep_opt = "det-sam", sweep_x0, sweep_list = "16,32,64,128,256,512,1024";
  std::string sweep_schedule, sweep_metric = "min-suboptimality", sweep_out;
  double sweep_rho = 1.0, sweep_eta = 0.1;
  int sweep_trials = 1;
  sweep_cmd->add_option("--config", sweep_config, "ExperimentConfig JSON file (overrides flags)");
  sweep_cmd->add_option("--opt", sweep_opt, "optimizer variant");
  sweep_cmd->add_option("--rho", sweep_rho, "perturbation size");
  sweep_cmd->add_option("--eta", sweep_eta, "step size (ignored when --schedule is set)");
  sweep_cmd->add_option("--x0", sweep_x0, "start point");
  sweep_cmd->add_option("--sweep", sweep_list, "comma-separated horizons");
  sweep_cmd->add_option("--trials", sweep_trials, "trials per horizon");
  sweep_cmd->add_option("--schedule", sweep_schedule,
                        "step-size schedule: thm31/33/34/41/44/46/47 or lb-case2");
  sweep_cmd->add_option("--metric", sweep_metric,
                        "min-suboptimality, mean-sq-grad-norm, final-suboptimality, min-grad-norm");
  sweep_cmd->add_option("--out", sweep_out, "fit JSON path");
  sweep_cmd->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });

  // virtual
  auto* virtual_cmd = app.add_subcommand("virtual", "dump f, grad f, G_f, J_f on a grid");
  FunctionFlags virtual_fn;
  virtual_fn.attach(virtual_cmd, /*id_required=*/true);
  double v_rho = 1.0, v_xmin = NAN, v_xmax = NAN, v_grid = 0.0;
  bool v_no_integrate = false;
  int v_grid2d = 101;
  std::string v_out = "virtual.csv";
  virtual_cmd->add_option("--rho", v_rho, "perturbation size of the virtual map");
  virtual_cmd->add_option("--xmin", v_xmin, "grid start (default: function box)");
  virtual_cmd->add_option("--xmax", v_xmax, "grid end (default: function box)");
  virtual_cmd->add_option("--grid", v_grid, "grid step h (default rho/1e4)");
  virtual_cmd->add_flag("--no-integrate", v_no_integrate, "skip J_f (required for 2-D functions)");
  virtual_cmd->add_option("--grid2d", v_grid2d, "points per axis for 2-D dumps");
  virtual_cmd->add_option("--out", v_out, "output CSV path");

  // check
  auto* check_cmd = app.add_subcommand("check", "run a theorem check and write a JSON report");
  std::string check_thm;
  check_cmd->add_option("theorem", check_thm, "theorem id")->required();
  FunctionFlags check_fn;
  check_fn.attach(check_cmd, /*id_required=*/false);
  std::string check_x0, check_sweep, check_out;
  double check_rho = 1.0, check_eta = 0.0;
  long check_steps = 10000;
  int check_trials = 1;
  check_cmd->add_option("--rho", check_rho, "perturbation size");
  check_cmd->add_option("--eta", check_eta, "step size (default: theorem cap)");
  check_cmd->add_option("--x0", check_x0, "start point");
  check_cmd->add_option("--sweep", check_sweep, "horizons for bound/rate checks");
  check_cmd->add_option("--steps", check_steps, "steps per run");
  check_cmd->add_option("--trials", check_trials, "number of trials");
  check_cmd->add_option("--out", check_out, "report JSON path");
  check_cmd->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });

  // reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "write figure data files");
  std::string repro_fig, repro_out = "figures";
  repro_cmd->add_option("figure", repro_fig, "fig1, fig4a, fig4b, fig4c")->required();
  repro_cmd->add_option("--out", repro_out, "output directory");
  repro_cmd->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    seed_given = true;
  });

  try {
    app.parse(argc, argv);
    if (!seed_given) seed = default_seed();

    if (list_cmd->parsed()) return cmd_list_functions();
    if (run_cmd->parsed())
      return cmd_run(run_fn, run_opt, run_rho, run_eta, run_x0, run_steps, seed, run_out);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_config, sweep_fn, sweep_opt, sweep_rho, sweep_eta, sweep_x0,
                       sweep_list, sweep_trials, sweep_schedule, sweep_metric, seed, sweep_out);
    if (virtual_cmd->parsed())
      return cmd_virtual(virtual_fn, v_rho, v_xmin, v_xmax, v_grid, v_no_integrate, v_grid2d,
                         v_out);
    if (check_cmd->parsed())
      return cmd_check(check_thm, check_fn, check_rho, check_eta, check_x0, check_sweep,
                       check_steps, check_trials, seed, check_out);
    if (repro_cmd->parsed()) return cmd_reproduce(repro_fig, repro_out, seed);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    std::cerr << "run with --help for flag documentation\n";
    return kExitUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
