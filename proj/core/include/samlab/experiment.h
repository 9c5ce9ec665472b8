#pragma once

#include <string>
#include <vector>

#include "samlab/catalog.h"
#include "samlab/optimizer.h"

namespace samlab {

enum class Metric { MinSuboptimality, MeanSqGradNorm, FinalSuboptimality, MinGradNorm };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// A sweep experiment: run `trials` trajectories per horizon T in `sweep`,
// average the metric across trials, then fit log(metric) against log(T).
// When `schedule` names a theorem id the step size is recomputed per T from
// that formula; "lb-case2" uses eta = 1/(2 mu T) with the oscillation
// initialization x0 = eta beta rho / (4 - eta beta).
struct ExperimentConfig {
  FunctionSpec function;
  OptimizerConfig optimizer;
  Metric metric = Metric::MinSuboptimality;
  std::vector<double> x0;
  std::vector<long> sweep;
  int trials = 1;
  std::string schedule;  // "", theorem id, or "lb-case2"

  void validate() const;
};

std::string experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json_text(const std::string& text);
ExperimentConfig experiment_from_json_file(const std::string& path);

}  // namespace samlab
