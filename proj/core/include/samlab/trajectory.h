#pragma once

#include <string>
#include <vector>

#include "samlab/optimizer.h"

namespace samlab {

// Record of one optimization run: T+1 iterates with mean-function values and
// gradient norms, plus optional per-step detail (T entries when recorded).
struct Trajectory {
  std::vector<Vec> iterates;
  std::vector<double> f_values;
  std::vector<double> grad_norms;
  std::vector<StepRecord> steps;
  OptimizerConfig config;
  std::string function_id;

  long T() const { return static_cast<long>(iterates.size()) - 1; }
  const Vec& final_iterate() const { return iterates.back(); }
};

// CSV schema: header `t,x0..x{d-1},f,grad_norm`, one row per iterate,
// decimals serialized with 17 significant digits so every binary64
// round-trips exactly.
void save_trajectory_csv(const Trajectory& traj, const std::string& path);

// Writes just `t,x` pairs for 1-D runs (figure x-vs-epoch series).
void save_x_vs_epoch_csv(const Trajectory& traj, const std::string& path);

// Parses a trajectory CSV; malformed content raises ParseError naming the
// line number. Only the serialized fields are recovered (config and
// function id are not part of the file).
Trajectory load_trajectory_csv(const std::string& path);

std::string format_double_17(double v);

}  // namespace samlab
