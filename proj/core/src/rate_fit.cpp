#include "samlab/rate_fit.h"

#include <cmath>
#include <sstream>

namespace samlab {

RateFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  RateFit fit;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [t, m] : points) {
    if (!(m > 0.0)) {
      std::ostringstream os;
      os << "excluding nonpositive metric " << m << " at T = " << t << " (log undefined)";
      fit.warnings.push_back(os.str());
      continue;
    }
    if (!(t > 0.0)) {
      std::ostringstream os;
      os << "excluding nonpositive horizon T = " << t;
      fit.warnings.push_back(os.str());
      continue;
    }
    fit.points.emplace_back(t, m);
    logs.emplace_back(std::log(t), std::log(m));
  }
  if (logs.size() < 3) throw UsageError("rate fit requires at least 3 usable (T, metric) points");

  double n = static_cast<double>(logs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;

  double ss_res = 0.0;
  for (const auto& [x, y] : logs) {
    double pred = fit.intercept + fit.exponent * x;
    ss_res += (y - pred) * (y - pred);
  }
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return fit;
}

}  // namespace samlab
