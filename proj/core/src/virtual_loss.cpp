#include "samlab/virtual_loss.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "samlab/errors.h"
#include "samlab/optimizer.h"
#include "samlab/trajectory.h"

namespace samlab {

namespace {

long grid_steps(double x_min, double x_max, double h) {
  if (!(h > 0.0)) throw UsageError("grid step h must be > 0");
  if (!(x_min < x_max)) throw UsageError("grid requires x_min < x_max");
  // Last grid point is x_min + n*h; a sub-half-step remainder is dropped.
  return std::lround(std::floor((x_max - x_min) / h + 0.5));
}

// Bisection for the sign-change location of fn inside [lo, hi]; converges
// to the crossing even across a jump discontinuity.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void append_roots(const std::function<double(double)>& fn, double x_min, long n, double h,
                  std::vector<double>* roots, std::vector<std::string>* warnings,
                  const char* label) {
  std::vector<double> vals(static_cast<size_t>(n) + 1);
  double scale = 0.0;
  for (long i = 0; i <= n; ++i) {
    vals[static_cast<size_t>(i)] = fn(x_min + static_cast<double>(i) * h);
    scale = std::max(scale, std::abs(vals[static_cast<size_t>(i)]));
  }
  const double ztol = 1e-13 * std::max(1.0, scale);
  auto push = [&](double r) {
    if (roots->empty() || std::abs(roots->back() - r) > 1e-9) roots->push_back(r);
  };
  for (long i = 0; i < n; ++i) {
    double a = vals[static_cast<size_t>(i)];
    double b = vals[static_cast<size_t>(i + 1)];
    double xa = x_min + static_cast<double>(i) * h;
    double xb = xa + h;
    if (std::abs(a) <= ztol && std::abs(b) <= ztol) {
      std::ostringstream os;
      os << label << ": grid too coarse to bracket near x = " << xa
         << " (adjacent samples both ~0); reporting interval midpoint";
      warnings->push_back(os.str());
      push(0.5 * (xa + xb));
      continue;
    }
    if (std::abs(a) <= ztol) {
      push(xa);
      continue;
    }
    if (std::abs(b) <= ztol) {
      if (i == n - 1) push(xb);
      continue;
    }
    if ((a > 0.0) != (b > 0.0)) push(bisect(fn, xa, xb, a));
  }
}

}  // namespace

Vec eval_virtual_gradient(const VirtualGradientMap& map, const Vec& x) {
  Vec g = map.base.gradient(x);
  Vec y = perturbed_point(x, g, map.rho, map.zero_grad_eps);
  Vec out = map.base.gradient(y);
  if (!out.all_finite()) throw NonFiniteError("virtual gradient is non-finite");
  return out;
}

VirtualLoss1D integrate_virtual_loss(const VirtualGradientMap& map, double x_min, double x_max,
                                     double h) {
  if (map.base.dim != 1) throw UsageError("virtual loss integration requires a 1-D function");
  long n = grid_steps(x_min, x_max, h);
  if (n < 1) throw UsageError("grid has fewer than two points");

  VirtualLoss1D out;
  out.x_min = x_min;
  out.h = h;
  out.g_values.resize(static_cast<size_t>(n) + 1);
  out.values.resize(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i)
    out.g_values[static_cast<size_t>(i)] =
        eval_virtual_gradient(map, Vec(x_min + static_cast<double>(i) * h)).scalar();
  out.values[0] = 0.0;
  for (long i = 0; i < n; ++i)
    out.values[static_cast<size_t>(i) + 1] =
        out.values[static_cast<size_t>(i)] +
        0.5 * h * (out.g_values[static_cast<size_t>(i)] + out.g_values[static_cast<size_t>(i) + 1]);
  return out;
}

StationarySets find_stationary_sets(const VirtualGradientMap& map, double x_min, double x_max,
                                    double h) {
  if (map.base.dim != 1) throw UsageError("stationary-set scan requires a 1-D function");
  long n = grid_steps(x_min, x_max, h);
  if (n < 1) throw UsageError("grid has fewer than two points");

  StationarySets sets;
  auto grad = [&](double x) { return map.base.gradient(Vec(x)).scalar(); };
  auto virt = [&](double x) { return eval_virtual_gradient(map, Vec(x)).scalar(); };

  append_roots(grad, x_min, n, h, &sets.true_stationary, &sets.warnings, "grad f");

  std::vector<double> g_zeros;
  append_roots(virt, x_min, n, h, &g_zeros, &sets.warnings, "G_f");
  const double spurious_threshold = 10.0 * map.zero_grad_eps;
  for (double r : g_zeros) {
    if (std::abs(grad(r)) > spurious_threshold) sets.spurious_stationary.push_back(r);
  }
  return sets;
}

void write_virtual_csv_1d(const VirtualGradientMap& map, double x_min, double x_max, double h,
                          const std::string& path) {
  VirtualLoss1D loss = integrate_virtual_loss(map, x_min, x_max, h);
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  os << "x,f,grad_f,G_f,J_f\n";
  for (size_t i = 0; i < loss.size(); ++i) {
    double x = loss.x_at(i);
    os << format_double_17(x) << ',' << format_double_17(map.base.value(Vec(x))) << ','
       << format_double_17(map.base.gradient(Vec(x)).scalar()) << ','
       << format_double_17(loss.g_values[i]) << ',' << format_double_17(loss.values[i]) << '\n';
  }
}

void write_virtual_csv_2d(const VirtualGradientMap& map, const Box& box, int points_per_axis,
                          const std::string& path) {
  if (map.base.dim != 2) throw UsageError("2-D grid dump requires a 2-D function");
  if (points_per_axis < 2) throw UsageError("2-D grid needs at least 2 points per axis");
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  os << "x0,x1,f,grad_f0,grad_f1,G_f0,G_f1\n";
  for (int i = 0; i < points_per_axis; ++i) {
    double tx = static_cast<double>(i) / (points_per_axis - 1);
    double x0 = box.lo[0] + tx * (box.hi[0] - box.lo[0]);
    for (int j = 0; j < points_per_axis; ++j) {
      double ty = static_cast<double>(j) / (points_per_axis - 1);
      double x1 = box.lo[1] + ty * (box.hi[1] - box.lo[1]);
      Vec x(x0, x1);
      Vec g = map.base.gradient(x);
      Vec G = eval_virtual_gradient(map, x);
      os << format_double_17(x0) << ',' << format_double_17(x1) << ','
         << format_double_17(map.base.value(x)) << ',' << format_double_17(g[0]) << ','
         << format_double_17(g[1]) << ',' << format_double_17(G[0]) << ','
         << format_double_17(G[1]) << '\n';
    }
  }
}

}  // namespace samlab
