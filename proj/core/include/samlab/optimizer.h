#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "samlab/objective.h"
#include "samlab/rng.h"

namespace samlab {

enum class Variant { Gd, Usam, DetSam, NSam, MSam };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);  // "gd", "usam", "det-sam", "n-sam", "m-sam"
bool is_stochastic(Variant v);

struct OptimizerConfig {
  Variant variant = Variant::DetSam;
  double rho = 0.0;                // perturbation size; ignored for GD
  double eta = 0.1;                // step size
  double zero_grad_eps = 1e-12;    // gradient norms at or below this are treated as zero
  uint64_t seed = 42;              // stochastic variants only

  void validate() const;  // throws UsageError naming the violated constraint
};

// Per-step detail. y is absent for GD. For stochastic variants,
// ascent_component / descent_component record the sampled indices of
// xi and xi~ (equal under m-SAM). grad_norm_at_x is the MEAN function's
// gradient norm at x.
struct StepRecord {
  Vec x;
  std::optional<Vec> y;
  int ascent_component = -1;
  int descent_component = -1;
  double grad_norm_at_x = 0.0;
};

// The normalized ascent point x + rho * g/||g||, with y = x whenever
// ||g|| <= eps. det_sam_step and the virtual gradient map share this
// helper, so their compositions agree bitwise.
Vec perturbed_point(const Vec& x, const Vec& g, double rho, double eps);

// One deterministic SAM step: x - eta * grad f(x + rho grad f(x)/||grad f(x)||).
std::pair<Vec, StepRecord> det_sam_step(const ObjectiveFunction& f, const Vec& x,
                                        const OptimizerConfig& cfg);

// One gradient-descent step: x - eta * grad f(x).
std::pair<Vec, StepRecord> gd_step(const ObjectiveFunction& f, const Vec& x,
                                   const OptimizerConfig& cfg);

// One unnormalized-SAM step: x - eta * grad f(x + rho grad f(x)).
std::pair<Vec, StepRecord> usam_step(const ObjectiveFunction& f, const Vec& x,
                                     const OptimizerConfig& cfg);

// One stochastic SAM step. Samples xi for the ascent gradient and, for
// n-SAM, an independent xi~ for the descent gradient (m-SAM reuses xi).
// The zero-gradient rule applies to the sampled ascent gradient. The
// advanced generator is returned in the result; the input is untouched.
struct StochStepResult {
  Vec next;
  StepRecord record;
  SplitMix64 rng;
};
StochStepResult stochastic_sam_step(const StochasticObjective& obj, const Vec& x,
                                    const OptimizerConfig& cfg, SplitMix64 rng);

}  // namespace samlab
