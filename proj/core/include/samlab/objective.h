#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "samlab/vec.h"

namespace samlab {

// Axis-aligned sampling box used by grid checks and stationary-set scans.
struct Box {
  Vec lo;
  Vec hi;
  bool contains(const Vec& x) const {
    for (int i = 0; i < x.dim(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
};

// Analytic constants attached to a catalog function.
//   beta      smoothness constant (gradient Lipschitz bound; +inf if nonsmooth)
//   mu        strong-convexity modulus (0 = merely convex or nonconvex)
//   lipschitz Lipschitz constant of f itself, when finite
//   f_star    infimum of f (-inf if unbounded below)
//   x_star    a known minimizer, when one exists
struct FunctionMeta {
  double beta = 0.0;
  double mu = 0.0;
  std::optional<double> lipschitz;
  double f_star = 0.0;
  std::optional<Vec> x_star;
  bool smooth = true;
  bool convex = false;
  Box box;
};

// Scalar function on R^d with an exact gradient oracle. At nonsmooth points
// the gradient returns one fixed, documented subgradient element. Instances
// are immutable after construction and safe to evaluate concurrently.
struct ObjectiveFunction {
  std::string id;
  int dim = 1;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  FunctionMeta meta;
};

// Finite mixture f(x) = sum_i prob[i] * component[i](x). The mean function
// carries the mixture's own metadata. sigma is the user-supplied variance
// bound; achieved_sigma is the recomputed supremum of
// sqrt(E||grad f - grad l||^2) over the sampling box.
struct StochasticObjective {
  std::vector<ObjectiveFunction> components;
  std::vector<double> probabilities;
  std::vector<double> cumulative;  // running sums of probabilities, ends at 1
  ObjectiveFunction mean;
  double sigma = 0.0;
  double achieved_sigma = 0.0;

  int dim() const { return mean.dim; }
};

// A catalog entry: either a plain function or a stochastic mixture.
struct Objective {
  std::optional<ObjectiveFunction> det;
  std::optional<StochasticObjective> stoch;

  bool is_stochastic() const { return stoch.has_value(); }
  const ObjectiveFunction& mean() const { return stoch ? stoch->mean : *det; }
  int dim() const { return mean().dim; }
};

}  // namespace samlab
