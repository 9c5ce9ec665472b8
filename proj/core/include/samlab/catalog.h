#pragma once

#include <string>
#include <vector>

#include "samlab/objective.h"

namespace samlab {

// Parameters of the two stochastic counterexample families. Use the
// factories; the constructors of the objectives validate every invariant
// and report the first one that fails.
struct CounterexampleParams {
  double rho = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
  double p = 0.0;       // component probability of f1
  double c = 0.0;       // basin center
  double a = 0.0;       // curvature scale
  double c_prime = 0.0;

  // Strongly convex family: p = 2/3, c = (1 + p/4) rho,
  // a = min{beta/5, sigma/(5 rho)}, c' = p c / (1 + p).
  static CounterexampleParams strongly_convex(double rho, double beta, double sigma);

  // Convex family: any p in (1/2, 1) and c > 5 rho / 4,
  // a = min{beta rho (1-p) / (8p), sigma sqrt(1-p) / (3 sqrt(p))},
  // c' = c - rho / (8p).
  static CounterexampleParams convex(double rho, double beta, double sigma, double p = 0.75,
                                     double c = -1.0 /* default 2*rho */);
};

// --- Catalog constructors -------------------------------------------------

// One-dimensional quadratic lower-bound constructions, one per step-size
// regime:
//   case 1: f(x) = mu x^2/2 - mu rho x
//   case 2: f(x) = beta x^2/4
//   case 3: f(x) = beta x^2/2
// Requires beta >= 2 mu and rho > 0.
ObjectiveFunction make_quadratic_lb(int lb_case, double beta, double mu, double rho);

// f(x) = (9 beta rho^2 / 25 pi^2) sin(5 pi x / (3 rho)): beta-smooth,
// 3 beta rho/(5 pi)-Lipschitz, with spurious SAM attractors off the
// stationary lattice.
ObjectiveFunction make_sine_example(double beta, double rho);

// f(x) = max{|x1|, |2 x1 + x2|}: convex, nonsmooth, minimized at the origin.
// At ties and at kinks of |.| the gradient returns the subgradient of the
// first-listed active branch with sign(0) = +1.
ObjectiveFunction make_nonsmooth_max();

// Two-component mixture whose mean is f(x) = a x^2 / 2 and whose component
// local concavity traps m-SAM inside [c - rho, c + rho].
StochasticObjective make_sc_counterexample(const CounterexampleParams& params);

// Two-component mixture whose mean is ax + beta x^2/2 (x <= 0) / ax (x >= 0),
// with an m-SAM trap of arbitrarily large suboptimality at c.
StochasticObjective make_cvx_counterexample(const CounterexampleParams& params);

// f(x, y) = (xy - 1)^2, minimized on the hyperbola xy = 1.
ObjectiveFunction make_hyperbola();

// Wraps a deterministic function into a two-component mixture with gradient
// noise +-noise_scale along the first coordinate; the mean is f itself and
// E||grad f - grad l||^2 = noise_scale^2 exactly.
StochasticObjective with_affine_noise(const ObjectiveFunction& f, double noise_scale);

// --- String-id construction (experiment configs, CLI) ----------------------

struct FunctionSpec {
  std::string id;
  double beta = 1.0;
  double mu = 0.5;
  double rho = 1.0;
  double sigma = 1.0;
  double p = 0.75;          // cvx-counter component probability
  double c = -1.0;          // cvx-counter basin center; < 0 means 2*rho
  double noise = 0.0;       // optional affine gradient noise for deterministic ids
};

// ids: quad-lb-1, quad-lb-2, quad-lb-3, sine, nonsmooth-max, sc-counter,
// cvx-counter, hyperbola.
Objective build_objective(const FunctionSpec& spec);

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::string parameters;
  bool stochastic;
  int dim;
};
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace samlab
