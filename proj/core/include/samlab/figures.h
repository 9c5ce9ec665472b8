#pragma once

#include <string>
#include <vector>

#include "samlab/vec.h"

namespace samlab {

// Data-file reproduction of the trajectory figures. Each call writes
// trajectory CSVs (plus an x-vs-epoch CSV for the 1-D panels) and a JSON
// file recording the fully resolved configuration.
//
//   fig1   GD vs USAM vs det-SAM on (xy-1)^2 from a shared start
//   fig4a  det-SAM on the sine example, x0 = 0.4
//   fig4b  m-SAM on the strongly convex counterexample, x0 = 4
//   fig4c  m-SAM on the convex counterexample, x0 = 9
struct FigureResult {
  std::string fig_id;
  std::vector<std::string> artifacts;
  // fig1 summary: final distances to (1,1) and final |xy-1| per optimizer.
  double sam_dist_to_flattest = 0.0;
  double gd_dist_to_flattest = 0.0;
  double usam_dist_to_flattest = 0.0;
  double sam_final_constraint = 0.0;   // |xy-1| at the final SAM iterate
  double gd_final_constraint = 0.0;
  double usam_final_constraint = 0.0;
  // fig4 summary: final iterate of the run.
  Vec final_iterate;
};

const std::vector<std::string>& figure_ids();

FigureResult reproduce_figure(const std::string& fig_id, const std::string& out_dir,
                              uint64_t seed = 42);

}  // namespace samlab
