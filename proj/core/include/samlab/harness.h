#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samlab/catalog.h"
#include "samlab/experiment.h"
#include "samlab/rate_fit.h"
#include "samlab/trajectory.h"

namespace samlab {

// Iterate norm above this aborts a run as divergent.
inline constexpr double kDivergenceThreshold = 1e12;

// Applies the configured step function T times from x0. Stochastic variants
// draw their stream from cfg.seed and the given substream index (one stream
// per trial). f_values and grad_norms always refer to the mean function.
// Throws DivergenceError when an iterate norm exceeds kDivergenceThreshold.
Trajectory run_trajectory(const Objective& obj, const Vec& x0, const OptimizerConfig& cfg, long T,
                          uint64_t stream_index = 0, bool record_steps = true);

double metric_value(const Trajectory& traj, Metric metric, double f_star);

struct SweepPoint {
  long T = 0;
  double eta = 0.0;
  double metric = 0.0;
};

struct SweepResult {
  RateFit fit;
  std::vector<SweepPoint> points;
};

SweepResult sweep_and_fit(const ExperimentConfig& cfg);

// --- Check reports ----------------------------------------------------------

struct BoundCheckPoint {
  long T = 0;
  double eta = 0.0;
  double metric = 0.0;
  double bound = 0.0;
  double stderr_3x = 0.0;  // 3 standard errors across trials (0 for deterministic)
  bool pass = false;
};

struct CheckReport {
  std::string experiment;
  bool pass = true;
  std::vector<std::pair<std::string, double>> margins;
  std::vector<BoundCheckPoint> points;
  std::vector<std::string> notes;
  std::vector<std::string> artifacts;
};

std::string report_to_json(const CheckReport& report);
void write_report(const CheckReport& report, const std::string& path);

// --- Theorem checks ---------------------------------------------------------

// Runs the trajectory under the theorem's own schedule at every T in
// cfg.sweep and asserts the theorem metric stays at or below
// bound_rhs(theorem_id) (+ 3 standard errors across trials for stochastic
// runs). The theorem's class assumptions are validated against the
// function's metadata first.
CheckReport check_bound_domination(const std::string& theorem_id, const ExperimentConfig& cfg);

// Oscillation lower bound (quadratic case-2 construction): per horizon T the
// run uses eta = 1/(2 mu T), x0 = eta beta rho/(4 - eta beta), and the fitted
// min-suboptimality exponent must land within `exponent_tol` of -2.
CheckReport check_lower_bound_rate(double beta, double rho, const std::vector<long>& sweep,
                                   double exponent_tol = 0.1);

// Asserts that every m-SAM iterate of every trial stays inside
// [c - rho, c + rho]; reports the minimum distance to the optimum and the
// minimum suboptimality seen across all iterates. Escapes fail the report
// with the first escaping (trial, t, x).
CheckReport check_trapped_interval(const StochasticObjective& obj,
                                   const CounterexampleParams& params, const OptimizerConfig& cfg,
                                   long T, int trials, const Vec& x0);

// Tail statistics over the last 10% of steps: minimum gradient norm and
// minimum distance to the nearest true stationary point, plus the final
// iterate and final gradient norm. Reporting only; never fails.
CheckReport check_floor(const Objective& obj, const OptimizerConfig& cfg, const Vec& x0, long T,
                        int trials, const std::vector<double>& true_stationary_points);

// Nonsmooth max function: from x0 in region B/C/D (coordinates w.r.t.
// v1 = e1, v2 = (2,1)/sqrt 5), every det-SAM iterate must keep
// b1 < -7 rho/2 + eta and stay at distance >= 7 rho/(4 sqrt 5) from the
// origin.
CheckReport check_nonsmooth_escape(const OptimizerConfig& cfg, const Vec& x0, long T);

// Basis coordinates (b1, b2) with x = b1 v1 + b2 v2.
Vec max_fn_basis_coords(const Vec& x);
// Region of the b1 < 0 halfplane: 'A', 'B', 'C', 'D', or 'O' for b1 >= 0.
char classify_max_fn_region(const Vec& x, double rho);

// --- Per-step descent-inequality suites --------------------------------------

// Deterministic descent inequality, checked on random det-SAM steps over the
// function's box with eta drawn in (0, 1/(2 beta)]:
//   f(x+) <= f(x) - (eta/2)||g||^2 - (eta mu rho/2)||g|| + eta^2 beta^3 rho^2 / 2.
struct DescentSuiteStats {
  long checked = 0;
  long violations = 0;
  double worst_margin = 0.0;  // max over steps of lhs - rhs (negative = satisfied)
};
DescentSuiteStats run_descent_inequality_suite(const ObjectiveFunction& f, double beta, double mu,
                                               double rho, long n_steps, uint64_t seed);

// Stochastic one-step inequality at a fixed x, trial-averaged:
//   E f(x+) <= f(x) - (eta/2)||g||^2 - (eta mu rho/2)||g||
//              + 2 eta beta^2 rho^2 - eta^2 beta (beta^2 rho^2 - sigma^2),
// required to hold within 3 standard errors of the trial mean.
struct StochasticDescentStats {
  double mean_next_f = 0.0;
  double rhs = 0.0;
  double stderr_3x = 0.0;
  bool pass = false;
};
StochasticDescentStats run_stochastic_descent_check(const StochasticObjective& obj, Variant variant,
                                                    double beta, double mu, double rho, double eta,
                                                    const Vec& x, long trials, uint64_t seed);

}  // namespace samlab
