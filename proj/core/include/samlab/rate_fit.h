#pragma once

#include <string>
#include <vector>

#include "samlab/errors.h"

namespace samlab {

// Ordinary least squares on (log T, log metric).
struct RateFit {
  double exponent = 0.0;   // fitted slope
  double intercept = 0.0;  // in log space
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (T, metric) pairs used
  std::vector<std::string> warnings;              // excluded nonpositive metrics etc.
};

// Fits metric ~ C * T^exponent. Nonpositive metric values are excluded with
// a warning (log undefined); at least 3 usable points are required.
RateFit fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace samlab
