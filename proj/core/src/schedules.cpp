#include "samlab/schedules.h"

#include <algorithm>
#include <cmath>

#include "samlab/errors.h"

namespace samlab {

namespace {

void check_common(const ScheduleInputs& in, bool needs_mu, bool needs_sigma) {
  if (!(in.beta > 0.0)) throw UsageError("schedule: beta must be > 0");
  if (!(in.rho > 0.0)) throw UsageError("schedule: rho must be > 0");
  if (!(in.T >= 1.0)) throw UsageError("schedule: T must be >= 1");
  if (!(in.delta >= 0.0)) throw UsageError("schedule: delta must be >= 0");
  if (needs_mu && !(in.mu > 0.0)) throw UsageError("schedule: mu must be > 0");
  if (needs_mu && !(in.mu <= in.beta)) throw UsageError("schedule: mu must be <= beta");
  if (needs_sigma && !(in.sigma >= 0.0)) throw UsageError("schedule: sigma must be >= 0");
}

double variance_clamp(const ScheduleInputs& in) {
  return std::max(0.0, in.sigma * in.sigma - in.beta * in.beta * in.rho * in.rho);
}

// max{1, log(arg)} with log(0) treated as -inf.
double log_term(double arg) { return arg <= 0.0 ? 1.0 : std::max(1.0, std::log(arg)); }

}  // namespace

double eta_thm31(const ScheduleInputs& in) {
  check_common(in, /*needs_mu=*/true, /*needs_sigma=*/false);
  double arg = std::pow(in.mu, 5) * in.delta * in.T * in.T /
               (std::pow(in.beta, 6) * in.rho * in.rho);
  double branch = log_term(arg) / (in.mu * in.T);
  return std::min(branch, 1.0 / (2.0 * in.beta));
}

double eta_thm33(const ScheduleInputs& in) {
  check_common(in, false, false);
  double branch = std::sqrt(2.0 * in.delta / (std::pow(in.beta, 3) * in.rho * in.rho * in.T));
  return std::min(branch, 1.0 / (2.0 * in.beta));
}

double eta_thm34(const ScheduleInputs& in) {
  check_common(in, false, false);
  return 1.0 / in.beta;
}

double eta_thm41(const ScheduleInputs& in) {
  check_common(in, true, true);
  double clamp = variance_clamp(in);
  if (clamp <= 0.0) return 1.0 / (2.0 * in.beta);  // sigma <= beta rho
  double arg = in.mu * in.mu * in.delta * in.T / (in.beta * clamp);
  double branch = log_term(arg) / (in.mu * in.T);
  return std::min(branch, 1.0 / (2.0 * in.beta));
}

double eta_thm44(const ScheduleInputs& in) {
  check_common(in, false, true);
  double clamp = variance_clamp(in);
  if (clamp <= 0.0) return 1.0 / (2.0 * in.beta);
  double branch = std::sqrt(in.delta / (in.beta * clamp * in.T));
  return std::min(branch, 1.0 / (2.0 * in.beta));
}

double eta_thm46(const ScheduleInputs& in) {
  check_common(in, false, true);
  double denom = in.beta * in.sigma * in.sigma * in.T;
  if (denom <= 0.0) return 1.0 / (2.0 * in.beta);  // noiseless: branch is +inf
  return std::min(1.0 / (2.0 * in.beta), std::sqrt(in.delta / denom));
}

double eta_thm47(const ScheduleInputs& in) {
  check_common(in, false, true);
  if (!in.lipschitz) throw UsageError("thm47 schedule requires the Lipschitz constant L");
  double l = *in.lipschitz;
  double denom = in.beta * (in.sigma * in.sigma + l * l) * in.T;
  if (!(denom > 0.0)) throw UsageError("thm47 schedule requires sigma^2 + L^2 > 0");
  return std::sqrt(in.delta / denom);
}

double bound_rhs(const std::string& id, const ScheduleInputs& in, double eta) {
  const double b = in.beta, r = in.rho, d = in.delta, t = in.T, s = in.sigma;
  if (id == "thm31") {
    return std::pow(1.0 - eta * in.mu, t) * d +
           eta * eta * std::pow(b, 6) * r * r / (2.0 * std::pow(in.mu, 3));
  }
  if (id == "thm33") return 2.0 * d / (eta * t) + eta * b * b * b * r * r;
  if (id == "thm34") return 2.0 * d / (eta * t) + b * b * r * r;
  if (id == "thm41") {
    return std::pow(1.0 - eta * in.mu, t) * d + 2.0 * b * b * r * r / in.mu +
           eta * b * variance_clamp(in) / in.mu;
  }
  if (id == "thm44") return 2.0 * d / (eta * t) + 4.0 * b * b * r * r + 2.0 * eta * b * variance_clamp(in);
  if (id == "thm46") return 2.0 * d / (eta * t) + b * b * r * r + 2.0 * b * s * s * eta;
  if (id == "thm47") {
    if (!in.lipschitz) throw UsageError("thm47 bound requires the Lipschitz constant L");
    double l = *in.lipschitz;
    return 2.0 * d / (eta * t) + 5.0 * b * b * r * r + 2.0 * b * eta * (s * s + l * l);
  }
  throw UsageError("unknown theorem id for bound_rhs: " + id);
}

double eta_for(const std::string& id, const ScheduleInputs& in) {
  if (id == "thm31") return eta_thm31(in);
  if (id == "thm33") return eta_thm33(in);
  if (id == "thm34") return eta_thm34(in);
  if (id == "thm41") return eta_thm41(in);
  if (id == "thm44") return eta_thm44(in);
  if (id == "thm46") return eta_thm46(in);
  if (id == "thm47") return eta_thm47(in);
  throw UsageError("unknown theorem id for schedule: " + id);
}

const std::vector<std::string>& schedule_theorem_ids() {
  static const std::vector<std::string> ids = {"thm31", "thm33", "thm34", "thm41",
                                               "thm44", "thm46", "thm47"};
  return ids;
}

}  // namespace samlab
