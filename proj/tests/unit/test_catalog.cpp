#include <doctest.h>

#include <cmath>
#include <numbers>

#include "samlab/catalog.h"
#include "samlab/errors.h"
#include "samlab/rng.h"

using namespace samlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent central-difference gradient, the oracle the analytic
// gradients are checked against.
Vec fd_gradient(const ObjectiveFunction& f, const Vec& x) {
  Vec g = Vec::zeros(f.dim);
  for (int i = 0; i < f.dim; ++i) {
    double h = 1e-6 * (1.0 + std::abs(x[i]));
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return g;
}

Vec sample_in_box(const Box& box, int dim, SplitMix64& rng) {
  Vec x = Vec::zeros(dim);
  for (int i = 0; i < dim; ++i) x[i] = box.lo[i] + rng.next_unit() * (box.hi[i] - box.lo[i]);
  return x;
}

void check_gradient_matches_fd(const ObjectiveFunction& f, int n_points, uint64_t seed,
                               double kink_margin = 0.0) {
  SplitMix64 rng(seed);
  int checked = 0;
  while (checked < n_points) {
    Vec x = sample_in_box(f.meta.box, f.dim, rng);
    if (kink_margin > 0.0) {
      // nonsmooth-max: skip points near a branch tie or an |.| kink.
      double g1 = std::abs(x[0]);
      double g2 = std::abs(2.0 * x[0] + x[1]);
      if (std::abs(g1 - g2) < kink_margin || g1 < kink_margin || g2 < kink_margin) continue;
    }
    Vec analytic = f.gradient(x);
    Vec fd = fd_gradient(f, x);
    double err = (analytic - fd).norm();
    CHECK_MESSAGE(err <= 1e-6 * (1.0 + analytic.norm()),
                  f.id << " gradient mismatch at x0=" << x[0] << " err=" << err);
    ++checked;
  }
}

void check_strong_convexity_pairs(const ObjectiveFunction& f, double mu, int n_pairs,
                                  uint64_t seed) {
  SplitMix64 rng(seed);
  for (int i = 0; i < n_pairs; ++i) {
    Vec x = sample_in_box(f.meta.box, f.dim, rng);
    Vec y = sample_in_box(f.meta.box, f.dim, rng);
    double lhs = f.value(x);
    double rhs = f.value(y) + dot(f.gradient(y), x - y) + 0.5 * mu * (x - y).norm_sq();
    CHECK(lhs >= rhs - 1e-9 * (1.0 + std::abs(lhs)));
  }
}

void check_smoothness_pairs(const ObjectiveFunction& f, double beta, int n_pairs, uint64_t seed) {
  SplitMix64 rng(seed);
  for (int i = 0; i < n_pairs; ++i) {
    Vec x = sample_in_box(f.meta.box, f.dim, rng);
    Vec y = sample_in_box(f.meta.box, f.dim, rng);
    double lhs = (f.gradient(x) - f.gradient(y)).norm();
    CHECK(lhs <= beta * (x - y).norm() * (1.0 + 1e-9) + 1e-12);
  }
}

void check_mixture_identity(const StochasticObjective& obj, int n_grid) {
  const Box& box = obj.mean.meta.box;
  for (int i = 0; i < n_grid; ++i) {
    double t = static_cast<double>(i) / (n_grid - 1);
    Vec x(box.lo[0] + t * (box.hi[0] - box.lo[0]));
    double mix = 0.0;
    for (size_t k = 0; k < obj.components.size(); ++k)
      mix += obj.probabilities[k] * obj.components[k].value(x);
    CHECK(std::abs(mix - obj.mean.value(x)) <= 1e-10 * (1.0 + std::abs(mix)));
  }
}

void check_f_star_against_grid(const ObjectiveFunction& f, int n_grid) {
  if (!std::isfinite(f.meta.f_star)) return;  // unbounded-below component
  double grid_min = std::numeric_limits<double>::infinity();
  const Box& box = f.meta.box;
  if (f.dim == 1) {
    for (int i = 0; i < n_grid; ++i) {
      double t = static_cast<double>(i) / (n_grid - 1);
      grid_min = std::min(grid_min, f.value(Vec(box.lo[0] + t * (box.hi[0] - box.lo[0]))));
    }
  } else {
    int per_axis = static_cast<int>(std::sqrt(n_grid));
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j) {
        double tx = static_cast<double>(i) / (per_axis - 1);
        double ty = static_cast<double>(j) / (per_axis - 1);
        grid_min = std::min(grid_min, f.value(Vec(box.lo[0] + tx * (box.hi[0] - box.lo[0]),
                                                  box.lo[1] + ty * (box.hi[1] - box.lo[1]))));
      }
  }
  CHECK(grid_min >= f.meta.f_star - 1e-12 * (1.0 + std::abs(f.meta.f_star)));
  if (f.meta.x_star && f.meta.box.contains(*f.meta.x_star)) {
    CHECK(f.value(*f.meta.x_star) ==
          doctest::Approx(f.meta.f_star).epsilon(1e-12).scale(1.0 + std::abs(f.meta.f_star)));
    // The grid approaches the infimum; the 2-D lattice is much coarser.
    double closeness = f.dim == 1 ? 1e-4 : 5e-2;
    CHECK(grid_min <= f.meta.f_star + closeness * (1.0 + std::abs(f.meta.f_star)));
  }
}

std::vector<ObjectiveFunction> smooth_catalog_functions() {
  std::vector<ObjectiveFunction> fns;
  fns.push_back(make_quadratic_lb(1, 1.0, 0.5, 1.0));
  fns.push_back(make_quadratic_lb(2, 1.0, 0.5, 1.0));
  fns.push_back(make_quadratic_lb(3, 2.0, 1.0, 1.0));
  fns.push_back(make_sine_example(1.0, 1.0));
  fns.push_back(make_hyperbola());
  auto sc = make_sc_counterexample(CounterexampleParams::strongly_convex(1.0, 5.0, 10.0));
  fns.push_back(sc.components[0]);
  fns.push_back(sc.components[1]);
  fns.push_back(sc.mean);
  auto cvx = make_cvx_counterexample(CounterexampleParams::convex(1.0, 1.0, 1.0));
  fns.push_back(cvx.components[0]);
  fns.push_back(cvx.components[1]);
  fns.push_back(cvx.mean);
  return fns;
}

}  // namespace

TEST_CASE("quad-lb constructions match hand-evaluated values") {
  auto case2 = make_quadratic_lb(2, 1.0, 0.5, 1.0);
  CHECK(case2.value(Vec(1.0 / 3.0)) == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
  CHECK(case2.gradient(Vec(1.0 / 3.0)).scalar() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  auto case1 = make_quadratic_lb(1, 2.0, 1.0, 1.0);
  CHECK(case1.meta.x_star->scalar() == 1.0);
  CHECK(case1.meta.f_star == doctest::Approx(-0.5));
  CHECK(case1.gradient(Vec(1.0)).scalar() == doctest::Approx(0.0));

  auto case3 = make_quadratic_lb(3, 2.0, 1.0, 1.0);
  CHECK(case3.gradient(Vec(0.7)).scalar() == doctest::Approx(1.4));
  CHECK(case3.meta.f_star == 0.0);
}

TEST_CASE("quad-lb rejects invalid parameters") {
  CHECK_THROWS_AS(make_quadratic_lb(2, 1.0, 0.6, 1.0), UsageError);   // beta < 2 mu
  CHECK_THROWS_AS(make_quadratic_lb(2, 1.0, 0.4, 0.0), UsageError);   // rho <= 0
  CHECK_THROWS_AS(make_quadratic_lb(2, 1.0, 0.4, -1.0), UsageError);
  CHECK_THROWS_AS(make_quadratic_lb(4, 1.0, 0.4, 1.0), UsageError);   // bad case
}

TEST_CASE("sine example: stationary lattice and derived gradient value") {
  auto f = make_sine_example(1.0, 1.0);
  CHECK(f.gradient(Vec(0.3)).scalar() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.gradient(Vec(0.9)).scalar() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(f.value(Vec(0.0)) == 0.0);
  // Independent evaluation of (3 beta rho / 5 pi) cos(5 pi x / (3 rho)).
  double expected = 3.0 / (5.0 * kPi) * std::cos(7.0 * kPi / 6.0);
  CHECK(f.gradient(Vec(0.7)).scalar() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(-0.16539867).epsilon(1e-6));
  CHECK(*f.meta.lipschitz == doctest::Approx(3.0 / (5.0 * kPi)));
  CHECK_THROWS_AS(make_sine_example(0.0, 1.0), UsageError);
  CHECK_THROWS_AS(make_sine_example(1.0, -1.0), UsageError);
}

TEST_CASE("nonsmooth max: branch evaluation and tie rule") {
  auto f = make_nonsmooth_max();
  CHECK(f.value(Vec(1.0, 0.0)) == 2.0);
  CHECK(f.gradient(Vec(1.0, 0.0)) == Vec(2.0, 1.0));
  CHECK(f.value(Vec(0.0, 0.0)) == 0.0);
  // Both branches equal 1 at (-1, 3); the first-branch tie rule applies.
  CHECK(f.value(Vec(-1.0, 3.0)) == 1.0);
  CHECK(f.gradient(Vec(-1.0, 3.0)) == Vec(-1.0, 0.0));
}

TEST_CASE("sc-counter: parameters, mean, and component values") {
  auto params = CounterexampleParams::strongly_convex(1.0, 5.0, 10.0);
  CHECK(params.p == doctest::Approx(2.0 / 3.0));
  CHECK(params.c == doctest::Approx(7.0 / 6.0));
  CHECK(params.a == doctest::Approx(1.0));  // min{5/5, 10/5}
  CHECK(params.c_prime == doctest::Approx(7.0 / 15.0));

  auto obj = make_sc_counterexample(params);
  // Mean at rho/6 equals a rho^2 / 72 by direct evaluation of a x^2 / 2.
  CHECK(obj.mean.value(Vec(1.0 / 6.0)) == doctest::Approx(1.0 / 72.0).epsilon(1e-15));
  // f1 has a local maximum of the concave cap at x = c.
  CHECK(obj.components[0].value(Vec(params.c)) == 0.0);
  CHECK(obj.components[0].gradient(Vec(params.c)).scalar() == 0.0);

  check_mixture_identity(obj, 100);
  CHECK(obj.achieved_sigma <= obj.sigma);

  auto bad = params;
  bad.p = 0.5;
  CHECK_THROWS_WITH_AS(make_sc_counterexample(bad), doctest::Contains("p = 2/3"), UsageError);
  bad = params;
  bad.a = 2.0;
  CHECK_THROWS_WITH_AS(make_sc_counterexample(bad), doctest::Contains("a = min"), UsageError);
}

TEST_CASE("cvx-counter: mean minimizer and mixture identity") {
  auto params = CounterexampleParams::convex(1.0, 1.0, 1.0, 0.75, 2.0);
  CHECK(params.a == doctest::Approx(1.0 / 24.0));
  CHECK(params.c_prime == doctest::Approx(2.0 - 1.0 / 6.0));

  auto obj = make_cvx_counterexample(params);
  CHECK(obj.mean.meta.x_star->scalar() == doctest::Approx(-params.a));
  CHECK(obj.mean.meta.f_star == doctest::Approx(-params.a * params.a / 2.0));
  CHECK(obj.mean.value(Vec(0.0)) == 0.0);
  check_mixture_identity(obj, 100);
  CHECK(obj.achieved_sigma <= obj.sigma);

  CHECK_THROWS_WITH_AS(
      make_cvx_counterexample(CounterexampleParams::convex(1.0, 1.0, 1.0, 0.75, 1.2)),
      doctest::Contains("c > 5 rho / 4"), UsageError);
  CHECK_THROWS_WITH_AS(
      make_cvx_counterexample(CounterexampleParams::convex(1.0, 1.0, 1.0, 0.4, 2.0)),
      doctest::Contains("p in (1/2, 1)"), UsageError);
}

TEST_CASE("hyperbola: values on and off the minimum curve") {
  auto f = make_hyperbola();
  CHECK(f.value(Vec(1.0, 1.0)) == 0.0);
  CHECK(f.gradient(Vec(1.0, 1.0)) == Vec(0.0, 0.0));
  CHECK(f.value(Vec(2.0, 0.5)) == 0.0);
  CHECK(f.value(Vec(1.0, 2.0)) == 1.0);
  CHECK(f.gradient(Vec(1.0, 2.0)) == Vec(4.0, 2.0));
}

TEST_CASE("analytic gradients agree with central differences on all smooth functions") {
  uint64_t seed = 1001;
  for (const auto& f : smooth_catalog_functions()) {
    check_gradient_matches_fd(f, 1000, seed++);
  }
  check_gradient_matches_fd(make_nonsmooth_max(), 1000, seed, /*kink_margin=*/1e-3);
}

TEST_CASE("strong convexity inequality holds for mu > 0 catalog functions") {
  uint64_t seed = 2001;
  for (const auto& f : smooth_catalog_functions()) {
    if (f.meta.mu > 0.0) check_strong_convexity_pairs(f, f.meta.mu, 1000, seed++);
  }
}

TEST_CASE("gradient Lipschitz bound holds on sampled pairs") {
  uint64_t seed = 3001;
  for (const auto& f : smooth_catalog_functions()) {
    check_smoothness_pairs(f, f.meta.beta, 1000, seed++);
  }
}

TEST_CASE("nonsmooth max: gradient is constant within each linear region") {
  // Pairs that do not straddle a kink have identical gradients, so any
  // finite Lipschitz-gradient bound holds on them.
  auto f = make_nonsmooth_max();
  SplitMix64 rng(404);
  auto region_of = [](const Vec& x) {
    double g1 = std::abs(x[0]);
    double g2 = std::abs(2.0 * x[0] + x[1]);
    int branch = g1 >= g2 ? 0 : 1;
    int sign = branch == 0 ? (x[0] >= 0.0 ? 0 : 1) : (2.0 * x[0] + x[1] >= 0.0 ? 0 : 1);
    return branch * 2 + sign;
  };
  int checked = 0;
  while (checked < 1000) {
    Vec x = sample_in_box(f.meta.box, 2, rng);
    Vec y = sample_in_box(f.meta.box, 2, rng);
    if (region_of(x) != region_of(y)) continue;
    CHECK((f.gradient(x) - f.gradient(y)).norm() == 0.0);
    ++checked;
  }
}

TEST_CASE("f_star matches dense grid sampling") {
  for (const auto& f : smooth_catalog_functions()) check_f_star_against_grid(f, 10001);
  check_f_star_against_grid(make_nonsmooth_max(), 10001);
}

TEST_CASE("empirical mixture variance stays within sigma^2") {
  auto obj = make_sc_counterexample(CounterexampleParams::strongly_convex(1.0, 5.0, 10.0));
  SplitMix64 rng(77);
  const Box& box = obj.mean.meta.box;
  for (int gp = 0; gp < 20; ++gp) {
    double t = static_cast<double>(gp) / 19.0;
    Vec x(box.lo[0] + t * (box.hi[0] - box.lo[0]));
    Vec gmean = obj.mean.gradient(x);
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      int k = rng.sample_index(obj.cumulative);
      acc += (obj.components[static_cast<size_t>(k)].gradient(x) - gmean).norm_sq();
    }
    CHECK(acc / n <= obj.sigma * obj.sigma);
  }
}

TEST_CASE("affine-noise wrapper: exact mean and variance") {
  auto noisy = with_affine_noise(make_sine_example(1.0, 1.0), 0.5);
  CHECK(noisy.sigma == 0.5);
  CHECK(noisy.achieved_sigma == doctest::Approx(0.5).epsilon(1e-12));
  check_mixture_identity(noisy, 101);
  CHECK(noisy.components[0].gradient(Vec(0.2)).scalar() -
            noisy.components[1].gradient(Vec(0.2)).scalar() ==
        doctest::Approx(1.0));
}

TEST_CASE("meta invariant: mu > 0 implies convex") {
  for (const auto& f : smooth_catalog_functions()) {
    if (f.meta.mu > 0.0) CHECK_MESSAGE(f.meta.convex, f.id << " has mu > 0 but convex = false");
  }
  auto max_fn = make_nonsmooth_max();
  CHECK(max_fn.meta.convex);
  CHECK(max_fn.meta.mu == 0.0);
}

TEST_CASE("build_objective resolves catalog ids and rejects unknown ones") {
  FunctionSpec spec;
  spec.id = "sine";
  CHECK(build_objective(spec).det.has_value());
  spec.id = "sc-counter";
  spec.beta = 5.0;
  spec.sigma = 10.0;
  CHECK(build_objective(spec).is_stochastic());
  spec.id = "no-such-fn";
  CHECK_THROWS_AS(build_objective(spec), UsageError);
  CHECK(catalog_entries().size() == 8);
}
