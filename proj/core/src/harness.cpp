#include "samlab/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "samlab/errors.h"
#include "samlab/schedules.h"

namespace samlab {

namespace {

using nlohmann::json;

Vec x0_from_vector(const std::vector<double>& x0, int dim) {
  if (static_cast<int>(x0.size()) != dim) {
    std::ostringstream os;
    os << "x0 has " << x0.size() << " coordinates, function is " << dim << "-dimensional";
    throw UsageError(os.str());
  }
  Vec v = Vec::zeros(dim);
  for (int i = 0; i < dim; ++i) v[i] = x0[static_cast<size_t>(i)];
  return v;
}

ScheduleInputs schedule_inputs_for(const Objective& obj, const OptimizerConfig& opt,
                                   const Vec& x0, long T) {
  const FunctionMeta& meta = obj.mean().meta;
  ScheduleInputs in;
  in.beta = meta.beta;
  in.mu = meta.mu;
  in.sigma = obj.is_stochastic() ? obj.stoch->sigma : 0.0;
  in.rho = opt.rho;
  in.delta = obj.mean().value(x0) - meta.f_star;
  in.T = static_cast<double>(T);
  in.lipschitz = meta.lipschitz;
  return in;
}

struct TrialStats {
  double mean = 0.0;
  double stderr_3x = 0.0;
};

TrialStats aggregate(const std::vector<double>& values) {
  TrialStats s;
  double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    double sd = std::sqrt(ss / (n - 1.0));
    s.stderr_3x = 3.0 * sd / std::sqrt(n);
  }
  return s;
}

// Mean over t = 0..T-1 of (||grad f(x_t)|| - beta*rho)^2, the Thm 4.7 metric.
double mean_sq_grad_gap(const Trajectory& traj, double beta_rho) {
  double s = 0.0;
  long T = traj.T();
  for (long t = 0; t < T; ++t) {
    double gap = traj.grad_norms[static_cast<size_t>(t)] - beta_rho;
    s += gap * gap;
  }
  return s / static_cast<double>(T);
}

}  // namespace

Trajectory run_trajectory(const Objective& obj, const Vec& x0, const OptimizerConfig& cfg, long T,
                          uint64_t stream_index, bool record_steps) {
  if (T < 1) throw UsageError("run_trajectory requires T >= 1");
  cfg.validate();
  if (is_stochastic(cfg.variant) && !obj.is_stochastic())
    throw UsageError("stochastic variants require a stochastic objective");

  const ObjectiveFunction& mean = obj.mean();
  if (x0.dim() != mean.dim) throw UsageError("x0 dimension does not match the function");

  Trajectory traj;
  traj.config = cfg;
  traj.function_id = mean.id;
  traj.iterates.reserve(static_cast<size_t>(T) + 1);
  traj.f_values.reserve(static_cast<size_t>(T) + 1);
  traj.grad_norms.reserve(static_cast<size_t>(T) + 1);
  if (record_steps) traj.steps.reserve(static_cast<size_t>(T));

  SplitMix64 rng = SplitMix64(cfg.seed).substream(stream_index);

  Vec x = x0;
  auto record_point = [&](const Vec& pt) {
    traj.iterates.push_back(pt);
    traj.f_values.push_back(mean.value(pt));
    traj.grad_norms.push_back(mean.gradient(pt).norm());
  };
  record_point(x);

  for (long t = 0; t < T; ++t) {
    if (x.norm() > kDivergenceThreshold) {
      std::ostringstream os;
      os << "trajectory diverged at step " << t << " (|x| = " << x.norm() << " > 1e12)";
      throw DivergenceError(os.str(), t);
    }
    Vec next;
    StepRecord rec;
    switch (cfg.variant) {
      case Variant::Gd:
        std::tie(next, rec) = gd_step(mean, x, cfg);
        break;
      case Variant::Usam:
        std::tie(next, rec) = usam_step(mean, x, cfg);
        break;
      case Variant::DetSam:
        std::tie(next, rec) = det_sam_step(mean, x, cfg);
        break;
      case Variant::NSam:
      case Variant::MSam: {
        StochStepResult res = stochastic_sam_step(*obj.stoch, x, cfg, rng);
        next = res.next;
        rec = res.record;
        rng = res.rng;
        break;
      }
    }
    if (record_steps) traj.steps.push_back(rec);
    x = next;
    record_point(x);
  }
  if (x.norm() > kDivergenceThreshold) {
    std::ostringstream os;
    os << "trajectory diverged at step " << T << " (|x| = " << x.norm() << " > 1e12)";
    throw DivergenceError(os.str(), T);
  }
  return traj;
}

double metric_value(const Trajectory& traj, Metric metric, double f_star) {
  switch (metric) {
    case Metric::MinSuboptimality: {
      double best = traj.f_values.front();
      for (double v : traj.f_values) best = std::min(best, v);
      return best - f_star;
    }
    case Metric::MeanSqGradNorm: {
      double s = 0.0;
      long T = traj.T();
      for (long t = 0; t < T; ++t)
        s += traj.grad_norms[static_cast<size_t>(t)] * traj.grad_norms[static_cast<size_t>(t)];
      return s / static_cast<double>(T);
    }
    case Metric::FinalSuboptimality:
      return traj.f_values.back() - f_star;
    case Metric::MinGradNorm: {
      double best = traj.grad_norms.front();
      for (double v : traj.grad_norms) best = std::min(best, v);
      return best;
    }
  }
  throw UsageError("unknown metric");
}

SweepResult sweep_and_fit(const ExperimentConfig& cfg) {
  cfg.validate();
  Objective obj = build_objective(cfg.function);
  const FunctionMeta& meta = obj.mean().meta;

  SweepResult result;
  std::vector<std::pair<double, double>> fit_points;
  for (size_t ti = 0; ti < cfg.sweep.size(); ++ti) {
    long T = cfg.sweep[ti];
    OptimizerConfig opt = cfg.optimizer;
    Vec x0;
    if (cfg.schedule == "lb-case2") {
      // Oscillation construction: eta = 1/(2 mu T), x0 = eta beta rho/(4 - eta beta).
      if (!(meta.mu > 0.0)) throw UsageError("lb-case2 schedule requires mu > 0");
      opt.eta = 1.0 / (2.0 * meta.mu * static_cast<double>(T));
      x0 = Vec(opt.eta * meta.beta * opt.rho / (4.0 - opt.eta * meta.beta));
    } else {
      x0 = x0_from_vector(cfg.x0, obj.dim());
      if (!cfg.schedule.empty())
        opt.eta = eta_for(cfg.schedule, schedule_inputs_for(obj, opt, x0, T));
    }

    std::vector<double> metrics(static_cast<size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
      uint64_t stream = (static_cast<uint64_t>(ti) << 32) + static_cast<uint64_t>(trial);
      Trajectory traj = run_trajectory(obj, x0, opt, T, stream, /*record_steps=*/false);
      metrics[static_cast<size_t>(trial)] = metric_value(traj, cfg.metric, meta.f_star);
    }
    TrialStats stats = aggregate(metrics);
    result.points.push_back({T, opt.eta, stats.mean});
    fit_points.emplace_back(static_cast<double>(T), stats.mean);
  }
  result.fit = fit_power_law(fit_points);
  return result;
}

std::string report_to_json(const CheckReport& report) {
  json j;
  j["experiment"] = report.experiment;
  j["pass"] = report.pass;
  json margins = json::object();
  for (const auto& [k, v] : report.margins) margins[k] = v;
  j["margins"] = margins;
  if (!report.points.empty()) {
    json pts = json::array();
    for (const auto& p : report.points) {
      pts.push_back({{"T", p.T},
                     {"eta", p.eta},
                     {"metric", p.metric},
                     {"bound", p.bound},
                     {"stderr_3x", p.stderr_3x},
                     {"pass", p.pass}});
    }
    j["points"] = pts;
  }
  j["notes"] = report.notes;
  j["artifacts"] = report.artifacts;
  return j.dump(2);
}

void write_report(const CheckReport& report, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  os << report_to_json(report) << '\n';
}

CheckReport check_bound_domination(const std::string& theorem_id, const ExperimentConfig& cfg) {
  Objective obj = build_objective(cfg.function);
  const FunctionMeta& meta = obj.mean().meta;

  const bool deterministic_thm =
      theorem_id == "thm31" || theorem_id == "thm33" || theorem_id == "thm34";
  const bool needs_strong_convexity = theorem_id == "thm31" || theorem_id == "thm41";
  const bool needs_convexity = needs_strong_convexity || theorem_id == "thm33" ||
                               theorem_id == "thm44";

  if (!meta.smooth) throw UsageError(theorem_id + ": function must be smooth");
  if (needs_convexity && !meta.convex) throw UsageError(theorem_id + ": function must be convex");
  if (needs_strong_convexity && !(meta.mu > 0.0))
    throw UsageError(theorem_id + ": function must be strongly convex (mu > 0)");
  if (theorem_id == "thm47" && !meta.lipschitz)
    throw UsageError("thm47: function must have a Lipschitz constant");

  OptimizerConfig opt = cfg.optimizer;
  if (deterministic_thm) {
    opt.variant = Variant::DetSam;
  } else if (theorem_id == "thm46") {
    opt.variant = Variant::NSam;
  } else if (theorem_id == "thm47") {
    opt.variant = Variant::MSam;
  } else if (!is_stochastic(opt.variant)) {
    opt.variant = Variant::NSam;
  }
  if (is_stochastic(opt.variant) && !obj.is_stochastic())
    throw UsageError(theorem_id + ": stochastic check requires a stochastic objective (use a "
                     "mixture id or --noise)");

  Vec x0 = x0_from_vector(cfg.x0, obj.dim());

  CheckReport report;
  report.experiment = "bound-domination/" + theorem_id + "/" + obj.mean().id;
  double worst_margin = std::numeric_limits<double>::infinity();

  for (size_t ti = 0; ti < cfg.sweep.size(); ++ti) {
    long T = cfg.sweep[ti];
    ScheduleInputs in = schedule_inputs_for(obj, opt, x0, T);
    OptimizerConfig run_opt = opt;
    run_opt.eta = eta_for(theorem_id, in);

    std::vector<double> metrics(static_cast<size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
      uint64_t stream = (static_cast<uint64_t>(ti) << 32) + static_cast<uint64_t>(trial);
      Trajectory traj = run_trajectory(obj, x0, run_opt, T, stream, /*record_steps=*/false);
      if (theorem_id == "thm31") {
        metrics[static_cast<size_t>(trial)] = metric_value(traj, Metric::MinSuboptimality, meta.f_star);
      } else if (theorem_id == "thm41") {
        metrics[static_cast<size_t>(trial)] = metric_value(traj, Metric::FinalSuboptimality, meta.f_star);
      } else if (theorem_id == "thm47") {
        metrics[static_cast<size_t>(trial)] = mean_sq_grad_gap(traj, meta.beta * run_opt.rho);
      } else {
        metrics[static_cast<size_t>(trial)] = metric_value(traj, Metric::MeanSqGradNorm, meta.f_star);
      }
    }
    TrialStats stats = aggregate(metrics);
    double bound = bound_rhs(theorem_id, in, run_opt.eta);
    double slack = deterministic_thm ? 1e-12 * std::max(1.0, std::abs(bound)) : stats.stderr_3x;
    BoundCheckPoint point;
    point.T = T;
    point.eta = run_opt.eta;
    point.metric = stats.mean;
    point.bound = bound;
    point.stderr_3x = stats.stderr_3x;
    point.pass = stats.mean <= bound + slack;
    report.points.push_back(point);
    report.pass = report.pass && point.pass;
    worst_margin = std::min(worst_margin, bound + slack - stats.mean);
    if (!point.pass) {
      std::ostringstream os;
      os << "violation at T = " << T << ": metric " << stats.mean << " > bound " << bound
         << " (+" << slack << ")";
      report.notes.push_back(os.str());
    }
  }
  report.margins.emplace_back("worst_margin", worst_margin);
  return report;
}

CheckReport check_lower_bound_rate(double beta, double rho, const std::vector<long>& sweep,
                                   double exponent_tol) {
  ObjectiveFunction f = make_quadratic_lb(2, beta, beta / 2.0, rho);
  double mu = f.meta.mu;
  Objective obj;
  obj.det = f;

  std::vector<std::pair<double, double>> points;
  CheckReport report;
  report.experiment = "lower-bound-rate/quad-lb-2";
  for (long T : sweep) {
    OptimizerConfig opt;
    opt.variant = Variant::DetSam;
    opt.rho = rho;
    opt.eta = 1.0 / (2.0 * mu * static_cast<double>(T));
    Vec x0(opt.eta * beta * rho / (4.0 - opt.eta * beta));
    Trajectory traj = run_trajectory(obj, x0, opt, T, 0, /*record_steps=*/false);
    points.emplace_back(static_cast<double>(T),
                        metric_value(traj, Metric::MinSuboptimality, f.meta.f_star));
  }
  RateFit fit = fit_power_law(points);
  report.pass = std::abs(fit.exponent + 2.0) <= exponent_tol;
  report.margins.emplace_back("fitted_exponent", fit.exponent);
  report.margins.emplace_back("target_exponent", -2.0);
  report.margins.emplace_back("tolerance", exponent_tol);
  report.margins.emplace_back("r_squared", fit.r_squared);
  if (!report.pass) {
    std::ostringstream os;
    os << "fitted exponent " << fit.exponent << " outside -2 +- " << exponent_tol;
    report.notes.push_back(os.str());
  }
  return report;
}

CheckReport check_trapped_interval(const StochasticObjective& obj,
                                   const CounterexampleParams& params, const OptimizerConfig& cfg,
                                   long T, int trials, const Vec& x0) {
  if (cfg.variant != Variant::MSam)
    throw UsageError("trapped-interval check requires the m-sam variant");
  const bool sc_family = std::abs(params.p - 2.0 / 3.0) < 1e-9;
  const double eta_cap = sc_family ? 0.3 / params.beta : 1.0 / params.beta;
  if (cfg.eta > eta_cap * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "eta " << cfg.eta << " exceeds the theorem cap " << eta_cap;
    throw UsageError(os.str());
  }
  const double lo = params.c - params.rho;
  const double hi = params.c + params.rho;
  if (x0.scalar() < lo || x0.scalar() > hi)
    throw UsageError("x0 must start inside [c - rho, c + rho]");

  const FunctionMeta& meta = obj.mean.meta;
  double x_star = meta.x_star ? meta.x_star->scalar() : 0.0;

  CheckReport report;
  report.experiment = "trapped-interval/" + obj.mean.id;
  double min_distance = std::abs(x0.scalar() - x_star);
  double min_subopt = obj.mean.value(x0) - meta.f_star;
  long total_iterates = 0;

  Objective wrapped;
  wrapped.stoch = obj;
  for (int trial = 0; trial < trials; ++trial) {
    if (T == 0) {
      ++total_iterates;
      continue;  // only x0 to check, handled by the initialization above
    }
    Trajectory traj = run_trajectory(wrapped, x0, cfg, T, static_cast<uint64_t>(trial),
                                     /*record_steps=*/false);
    for (size_t t = 0; t < traj.iterates.size(); ++t) {
      double x = traj.iterates[t][0];
      ++total_iterates;
      if (x < lo || x > hi) {
        report.pass = false;
        std::ostringstream os;
        os << "escape: trial " << trial << ", t = " << t << ", x = " << x << " outside ["
           << lo << ", " << hi << "]";
        report.notes.push_back(os.str());
        break;
      }
      min_distance = std::min(min_distance, std::abs(x - x_star));
      min_subopt = std::min(min_subopt, traj.f_values[t] - meta.f_star);
    }
    if (!report.pass) break;
  }
  report.margins.emplace_back("interval_lo", lo);
  report.margins.emplace_back("interval_hi", hi);
  report.margins.emplace_back("min_distance_to_optimum", min_distance);
  report.margins.emplace_back("min_suboptimality", min_subopt);
  report.margins.emplace_back("iterates_checked", static_cast<double>(total_iterates));
  return report;
}

CheckReport check_floor(const Objective& obj, const OptimizerConfig& cfg, const Vec& x0, long T,
                        int trials, const std::vector<double>& true_stationary_points) {
  const ObjectiveFunction& mean = obj.mean();
  CheckReport report;
  report.experiment = "floor/" + mean.id;

  double tail_min_grad = std::numeric_limits<double>::infinity();
  double tail_min_dist = std::numeric_limits<double>::infinity();
  double final_grad = 0.0;
  Vec final_x;
  long tail_start = T - std::max<long>(1, T / 10);

  for (int trial = 0; trial < trials; ++trial) {
    Trajectory traj =
        run_trajectory(obj, x0, cfg, T, static_cast<uint64_t>(trial), /*record_steps=*/false);
    for (long t = tail_start; t <= traj.T(); ++t) {
      double g = traj.grad_norms[static_cast<size_t>(t)];
      tail_min_grad = std::min(tail_min_grad, g);
      if (!true_stationary_points.empty() && mean.dim == 1) {
        double x = traj.iterates[static_cast<size_t>(t)][0];
        for (double s : true_stationary_points)
          tail_min_dist = std::min(tail_min_dist, std::abs(x - s));
      }
    }
    final_grad = traj.grad_norms.back();
    final_x = traj.final_iterate();
  }
  report.margins.emplace_back("tail_min_grad_norm", tail_min_grad);
  if (std::isfinite(tail_min_dist))
    report.margins.emplace_back("tail_min_distance_to_stationary", tail_min_dist);
  report.margins.emplace_back("final_grad_norm", final_grad);
  for (int i = 0; i < final_x.dim(); ++i)
    report.margins.emplace_back("final_x" + std::to_string(i), final_x[i]);
  return report;
}

Vec max_fn_basis_coords(const Vec& x) {
  // v1 = e1, v2 = (2, 1)/sqrt(5): b2 = sqrt(5) x2, b1 = x1 - 2 x2.
  return Vec(x[0] - 2.0 * x[1], std::sqrt(5.0) * x[1]);
}

char classify_max_fn_region(const Vec& x, double rho) {
  Vec b = max_fn_basis_coords(x);
  double b1 = b[0], s5b2 = std::sqrt(5.0) * b[1];
  if (b1 >= 0.0) return 'O';
  if (b1 > -3.5 * rho) return 'A';
  if (b1 + s5b2 > 0.0) return 'B';
  if (-b1 + s5b2 > 0.0 && -2.0 * b1 + s5b2 > 1.5 * rho) return 'C';
  return 'D';
}

CheckReport check_nonsmooth_escape(const OptimizerConfig& cfg, const Vec& x0, long T) {
  if (cfg.variant != Variant::DetSam)
    throw UsageError("nonsmooth escape check requires the det-sam variant");
  if (!(cfg.eta < 1.75 * cfg.rho))
    throw UsageError("nonsmooth escape check requires eta < 7 rho / 4");
  char region = classify_max_fn_region(x0, cfg.rho);
  if (region != 'B' && region != 'C' && region != 'D') {
    std::ostringstream os;
    os << "x0 must lie in region B, C, or D (got region " << region << ")";
    throw UsageError(os.str());
  }

  Objective obj;
  obj.det = make_nonsmooth_max();
  Trajectory traj = run_trajectory(obj, x0, cfg, T, 0, /*record_steps=*/false);

  const double b1_threshold = -3.5 * cfg.rho + cfg.eta;
  const double dist_threshold = 7.0 * cfg.rho / (4.0 * std::sqrt(5.0));
  CheckReport report;
  report.experiment = "nonsmooth-escape/nonsmooth-max";
  double min_b1_margin = std::numeric_limits<double>::infinity();
  double min_distance = std::numeric_limits<double>::infinity();
  for (size_t t = 0; t < traj.iterates.size(); ++t) {
    const Vec& x = traj.iterates[t];
    double b1 = max_fn_basis_coords(x)[0];
    double dist = x.norm();
    min_b1_margin = std::min(min_b1_margin, b1_threshold - b1);
    min_distance = std::min(min_distance, dist);
    if (b1 >= b1_threshold || dist < dist_threshold) {
      report.pass = false;
      std::ostringstream os;
      os << "violation at t = " << t << ": b1 = " << b1 << " (threshold " << b1_threshold
         << "), |x| = " << dist << " (threshold " << dist_threshold << ")";
      report.notes.push_back(os.str());
      break;
    }
  }
  report.margins.emplace_back("start_region", static_cast<double>(region));
  report.margins.emplace_back("b1_threshold", b1_threshold);
  report.margins.emplace_back("min_b1_margin", min_b1_margin);
  report.margins.emplace_back("distance_threshold", dist_threshold);
  report.margins.emplace_back("min_distance", min_distance);
  return report;
}

DescentSuiteStats run_descent_inequality_suite(const ObjectiveFunction& f, double beta, double mu,
                                               double rho, long n_steps, uint64_t seed) {
  SplitMix64 rng(seed);
  const Box& box = f.meta.box;
  DescentSuiteStats stats;
  stats.worst_margin = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < n_steps; ++i) {
    Vec x = Vec::zeros(f.dim);
    for (int k = 0; k < f.dim; ++k)
      x[k] = box.lo[k] + rng.next_unit() * (box.hi[k] - box.lo[k]);
    OptimizerConfig cfg;
    cfg.variant = Variant::DetSam;
    cfg.rho = rho;
    cfg.eta = rng.next_unit() / (2.0 * beta);
    if (cfg.eta <= 0.0) cfg.eta = 1.0 / (4.0 * beta);
    auto [next, rec] = det_sam_step(f, x, cfg);
    double g = rec.grad_norm_at_x;
    double lhs = f.value(next);
    double rhs = f.value(x) - 0.5 * cfg.eta * g * g - 0.5 * cfg.eta * mu * rho * g +
                 0.5 * cfg.eta * cfg.eta * beta * beta * beta * rho * rho;
    double margin = lhs - rhs;
    stats.worst_margin = std::max(stats.worst_margin, margin);
    if (margin > 1e-12 * std::max(1.0, std::abs(rhs))) ++stats.violations;
    ++stats.checked;
  }
  return stats;
}

StochasticDescentStats run_stochastic_descent_check(const StochasticObjective& obj, Variant variant,
                                                    double beta, double mu, double rho, double eta,
                                                    const Vec& x, long trials, uint64_t seed) {
  if (!is_stochastic(variant))
    throw UsageError("stochastic descent check requires n-sam or m-sam");
  OptimizerConfig cfg;
  cfg.variant = variant;
  cfg.rho = rho;
  cfg.eta = eta;
  cfg.seed = seed;

  std::vector<double> next_values(static_cast<size_t>(trials));
  SplitMix64 master(seed);
  for (long trial = 0; trial < trials; ++trial) {
    StochStepResult res =
        stochastic_sam_step(obj, x, cfg, master.substream(static_cast<uint64_t>(trial)));
    next_values[static_cast<size_t>(trial)] = obj.mean.value(res.next);
  }
  TrialStats agg = aggregate(next_values);

  double g = obj.mean.gradient(x).norm();
  double fx = obj.mean.value(x);
  double sigma = obj.sigma;
  StochasticDescentStats out;
  out.mean_next_f = agg.mean;
  out.stderr_3x = agg.stderr_3x;
  out.rhs = fx - 0.5 * eta * g * g - 0.5 * eta * mu * rho * g + 2.0 * eta * beta * beta * rho * rho -
            eta * eta * beta * (beta * beta * rho * rho - sigma * sigma);
  out.pass = agg.mean <= out.rhs + agg.stderr_3x;
  return out;
}

}  // namespace samlab
