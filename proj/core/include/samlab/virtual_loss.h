#pragma once

#include <string>
#include <vector>

#include "samlab/objective.h"

namespace samlab {

// G_f(x) = grad f(x + rho grad f(x)/||grad f(x)||), with G_f(x) = grad f(x)
// whenever ||grad f(x)|| <= zero_grad_eps. One deterministic SAM step equals
// x - eta * G_f(x).
struct VirtualGradientMap {
  ObjectiveFunction base;
  double rho = 1.0;
  double zero_grad_eps = 1e-12;
};

Vec eval_virtual_gradient(const VirtualGradientMap& map, const Vec& x);

// Cumulative trapezoid integral of G_f over a uniform 1-D grid, anchored at
// J(x_min) = 0. G_f is piecewise smooth with jump discontinuities at sign
// changes of grad f; the trapezoid rule keeps O(h) local error at the jumps
// and O(h^2) on smooth segments.
struct VirtualLoss1D {
  double x_min = 0.0;
  double h = 0.0;
  std::vector<double> values;    // J at grid points, values[0] == 0
  std::vector<double> g_values;  // G_f at grid points

  double x_at(size_t i) const { return x_min + static_cast<double>(i) * h; }
  size_t size() const { return values.size(); }
};

VirtualLoss1D integrate_virtual_loss(const VirtualGradientMap& map, double x_min, double x_max,
                                     double h);

// Zeros of grad f (set X, true stationary points) and of G_f with
// grad f != 0 (set Y, spurious stationary points) on [x_min, x_max],
// located by sign-change bracketing plus bisection to width 1e-10.
// A G_f zero counts as spurious when |grad f| > 10 * zero_grad_eps there.
struct StationarySets {
  std::vector<double> true_stationary;
  std::vector<double> spurious_stationary;
  std::vector<std::string> warnings;  // e.g. grid too coarse to bracket
};

StationarySets find_stationary_sets(const VirtualGradientMap& map, double x_min, double x_max,
                                    double h);

// Grid dump written by the CLI `virtual` subcommand. 1-D files carry columns
// x,f,grad_f,G_f,J_f; 2-D files carry x0,x1,f,grad_f0,grad_f1,G_f0,G_f1.
void write_virtual_csv_1d(const VirtualGradientMap& map, double x_min, double x_max, double h,
                          const std::string& path);
void write_virtual_csv_2d(const VirtualGradientMap& map, const Box& box, int points_per_axis,
                          const std::string& path);

}  // namespace samlab
