#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samlab/objective.h"

namespace samlab {

// Inputs to the theorem step-size formulas and bound right-hand sides.
// delta = f(x0) - f*. lipschitz is required by thm47 only.
struct ScheduleInputs {
  double beta = 1.0;
  double mu = 0.0;
  double sigma = 0.0;
  double rho = 1.0;
  double delta = 1.0;
  double T = 1.0;
  std::optional<double> lipschitz;
};

// Step-size schedules, exactly as prescribed per theorem. Natural log
// throughout. [sigma^2 - beta^2 rho^2]_+ clamps at 0; a zero clamp makes
// the sigma-dependent branch +inf so the min selects 1/(2 beta).
double eta_thm31(const ScheduleInputs& in);  // min{ max(1, ln(mu^5 D T^2 / b^6 r^2))/(mu T), 1/(2b) }
double eta_thm33(const ScheduleInputs& in);  // min{ sqrt(2D / (b^3 r^2 T)), 1/(2b) }
double eta_thm34(const ScheduleInputs& in);  // 1/b
double eta_thm41(const ScheduleInputs& in);  // min{ max(1, ln(mu^2 D T / (b [s^2-b^2 r^2]_+)))/(mu T), 1/(2b) }
double eta_thm44(const ScheduleInputs& in);  // min{ sqrt(D / (b [s^2-b^2 r^2]_+ T)), 1/(2b) }
double eta_thm46(const ScheduleInputs& in);  // min{ 1/(2b), sqrt(D / (b s^2 T)) }
double eta_thm47(const ScheduleInputs& in);  // sqrt(D / (b (s^2 + L^2) T))

// Explicit (constant-bearing) bound right-hand sides, pre-simplification:
//   thm31: (1 - eta mu)^T D + eta^2 b^6 r^2 / (2 mu^3)
//   thm33: (2/(eta T)) D + eta b^3 r^2
//   thm34: (2 D/(eta T)) + b^2 r^2
//   thm41: (1 - eta mu)^T D + 2 b^2 r^2 / mu + eta b [s^2 - b^2 r^2]_+ / mu
//   thm44: (2/(eta T)) D + 4 b^2 r^2 + 2 eta b [s^2 - b^2 r^2]_+
//   thm46: (2 D/(eta T)) + b^2 r^2 + 2 b s^2 eta
//   thm47: (2 D/(eta T)) + 5 b^2 r^2 + 2 b eta (s^2 + L^2)
double bound_rhs(const std::string& theorem_id, const ScheduleInputs& in, double eta);

// Dispatch by id ("thm31", "thm33", "thm34", "thm41", "thm44", "thm46",
// "thm47"); unknown ids are rejected.
double eta_for(const std::string& theorem_id, const ScheduleInputs& in);

const std::vector<std::string>& schedule_theorem_ids();

}  // namespace samlab
