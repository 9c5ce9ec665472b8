#include <doctest.h>

#include <cmath>
#include <numbers>

#include "samlab/catalog.h"
#include "samlab/errors.h"
#include "samlab/harness.h"
#include "samlab/optimizer.h"
#include "samlab/virtual_loss.h"

using namespace samlab;

namespace {

constexpr double kPi = std::numbers::pi;

VirtualGradientMap sine_map(double beta = 1.0, double rho = 1.0) {
  return VirtualGradientMap{make_sine_example(beta, rho), rho, 1e-12};
}

VirtualGradientMap half_square_map(double rho = 1.0) {
  return VirtualGradientMap{make_quadratic_lb(3, 1.0, 0.5, 1.0), rho, 1e-12};
}

bool contains_near(const std::vector<double>& xs, double target, double tol) {
  for (double x : xs)
    if (std::abs(x - target) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("virtual gradient: hand-evaluated and zero-gradient cases") {
  auto map = half_square_map(1.0);
  CHECK(eval_virtual_gradient(map, Vec(2.0)).scalar() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval_virtual_gradient(map, Vec(0.0)).scalar() == 0.0);
  // x = 0.7 sits in set Y of the sine construction: G_f = 0, grad f != 0.
  auto smap = sine_map();
  CHECK(eval_virtual_gradient(smap, Vec(0.7)).scalar() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(std::abs(smap.base.gradient(Vec(0.7)).scalar()) > 0.1);
}

TEST_CASE("virtual loss integration: closed-form segment of x^2/2") {
  auto map = half_square_map(1.0);
  auto loss = integrate_virtual_loss(map, 0.0, 2.0, 1e-4);
  // J(2) - J(1) = integral of (x + 1) over [1, 2] = 2.5.
  size_t i1 = 10000, i2 = 20000;
  CHECK(loss.x_at(i1) == doctest::Approx(1.0));
  CHECK(loss.values[i2] - loss.values[i1] == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("virtual loss of a constant-gradient-zero function is identically zero") {
  ObjectiveFunction flat;
  flat.id = "flat";
  flat.dim = 1;
  flat.value = [](const Vec&) { return 3.0; };
  flat.gradient = [](const Vec&) { return Vec(0.0); };
  flat.meta.box = Box{Vec(-1.0), Vec(1.0)};
  auto loss = integrate_virtual_loss(VirtualGradientMap{flat, 1.0, 1e-12}, -1.0, 1.0, 1e-3);
  for (double v : loss.values) CHECK(v == 0.0);
}

TEST_CASE("virtual loss matches the sine closed form up to an additive constant") {
  auto map = sine_map();
  auto loss = integrate_virtual_loss(map, -0.3, 0.3, 1e-4);
  // Closed form on [-0.3, 0.3]: (9/25 pi^2) sin(5 pi x/3 + 5 pi/3) + const.
  auto closed = [](double x) {
    return 9.0 / (25.0 * kPi * kPi) * std::sin(5.0 * kPi * x / 3.0 + 5.0 * kPi / 3.0);
  };
  double shift = closed(-0.3) - loss.values.front();
  for (size_t i = 0; i < loss.size(); i += 50) {
    double x = loss.x_at(i);
    CHECK(loss.values[i] + shift == doctest::Approx(closed(x)).epsilon(0).scale(1).epsilon(1e-4));
  }
}

TEST_CASE("numerical derivative of J matches G away from the jumps") {
  auto map = sine_map();
  const double h = 1e-3, beta = 1.0;
  auto loss = integrate_virtual_loss(map, -1.5, 1.5, h);
  const double tol = std::max(1e-4, 10.0 * h * beta);
  // G_f jumps at the stationary lattice (0.3 + 0.6 k) rho; skip a 3h margin.
  auto near_jump = [&](double x) {
    double k = std::round((x - 0.3) / 0.6);
    return std::abs(x - (0.3 + 0.6 * k)) < 3.0 * h;
  };
  for (size_t i = 1; i + 1 < loss.size(); ++i) {
    double x = loss.x_at(i);
    if (near_jump(x)) continue;
    double dj = (loss.values[i + 1] - loss.values[i - 1]) / (2.0 * h);
    CHECK(std::abs(dj - loss.g_values[i]) <= tol);
  }
}

TEST_CASE("integration is second-order on smooth segments") {
  auto map = sine_map();
  // [-0.29, 0.29] avoids the G_f jumps at +-0.3.
  auto j1 = integrate_virtual_loss(map, -0.29, 0.29, 4e-3);
  auto j2 = integrate_virtual_loss(map, -0.29, 0.29, 2e-3);
  auto j4 = integrate_virtual_loss(map, -0.29, 0.29, 1e-3);
  double d1 = 0.0, d2 = 0.0;
  for (size_t i = 0; i < j1.size(); ++i) {
    d1 = std::max(d1, std::abs(j1.values[i] - j2.values[2 * i]));
    d2 = std::max(d2, std::abs(j2.values[2 * i] - j4.values[4 * i]));
  }
  CHECK(d2 <= d1 / 4.0 * 1.5);  // halving h cuts the error ~4x
}

TEST_CASE("integration input validation") {
  auto map = sine_map();
  CHECK_THROWS_AS(integrate_virtual_loss(map, 1.0, 0.0, 1e-3), UsageError);
  CHECK_THROWS_AS(integrate_virtual_loss(map, 0.0, 1.0, 0.0), UsageError);
  VirtualGradientMap two_d{make_hyperbola(), 1.0, 1e-12};
  CHECK_THROWS_AS(integrate_virtual_loss(two_d, 0.0, 1.0, 1e-3), UsageError);
}

TEST_CASE("stationary sets of the sine construction") {
  auto sets = find_stationary_sets(sine_map(), -1.5, 1.5, 1e-3);
  for (double x : {-0.9, -0.3, 0.3, 0.9})
    CHECK_MESSAGE(contains_near(sets.true_stationary, x, 1e-8), "missing X point " << x);
  for (double y : {-1.3, -0.1, 0.7, 1.1})
    CHECK_MESSAGE(contains_near(sets.spurious_stationary, y, 1e-8), "missing Y point " << y);
  // X and Y are disjoint.
  for (double x : sets.true_stationary)
    CHECK_FALSE(contains_near(sets.spurious_stationary, x, 1e-6));
}

TEST_CASE("stationary sets of quadratics: X only") {
  auto sets = find_stationary_sets(half_square_map(1.0), -3.0, 3.0, 1e-3);
  REQUIRE(sets.true_stationary.size() == 1);
  CHECK(sets.true_stationary[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(sets.spurious_stationary.empty());

  // Shifted minimizer: f(x) = (x - 1)^2 / 2.
  ObjectiveFunction shifted;
  shifted.id = "shifted-quad";
  shifted.dim = 1;
  shifted.value = [](const Vec& x) { return 0.5 * (x[0] - 1.0) * (x[0] - 1.0); };
  shifted.gradient = [](const Vec& x) { return Vec(x[0] - 1.0); };
  shifted.meta.box = Box{Vec(-3.0), Vec(3.0)};
  auto sets2 = find_stationary_sets(VirtualGradientMap{shifted, 1.0, 1e-12}, -3.0, 3.0, 1e-3);
  REQUIRE(sets2.true_stationary.size() == 1);
  CHECK(sets2.true_stationary[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sets2.spurious_stationary.empty());
}

TEST_CASE("stationary scan warns instead of failing on a flat gradient plateau") {
  // grad f vanishes on [-0.5, 0.5]: adjacent samples are both ~0 there, so
  // the scan cannot bracket isolated roots and reports a warning.
  ObjectiveFunction plateau;
  plateau.id = "plateau";
  plateau.dim = 1;
  plateau.value = [](const Vec& v) {
    double x = v[0];
    if (x > 0.5) return 0.5 * (x - 0.5) * (x - 0.5);
    if (x < -0.5) return 0.5 * (x + 0.5) * (x + 0.5);
    return 0.0;
  };
  plateau.gradient = [](const Vec& v) {
    double x = v[0];
    if (x > 0.5) return Vec(x - 0.5);
    if (x < -0.5) return Vec(x + 0.5);
    return Vec(0.0);
  };
  plateau.meta.box = Box{Vec(-2.0), Vec(2.0)};
  auto sets = find_stationary_sets(VirtualGradientMap{plateau, 0.3, 1e-12}, -2.0, 2.0, 0.01);
  CHECK_FALSE(sets.warnings.empty());
}

TEST_CASE("every spurious stationary point is a det-sam fixed point") {
  auto map = sine_map();
  auto sets = find_stationary_sets(map, -1.5, 1.5, 1e-3);
  REQUIRE_FALSE(sets.spurious_stationary.empty());
  OptimizerConfig cfg;
  cfg.variant = Variant::DetSam;
  cfg.rho = 1.0;
  cfg.eta = 0.5;
  for (double y : sets.spurious_stationary) {
    auto [next, rec] = det_sam_step(map.base, Vec(y), cfg);
    CHECK(std::abs(next.scalar() - y) <= 1e-9);
  }
}

TEST_CASE("one det-sam step equals x - eta G_f(x) on every catalog function") {
  std::vector<ObjectiveFunction> fns = {make_quadratic_lb(1, 1.0, 0.5, 1.0),
                                        make_quadratic_lb(2, 1.0, 0.5, 1.0),
                                        make_sine_example(1.0, 1.0),
                                        make_nonsmooth_max(),
                                        make_hyperbola()};
  auto sc = make_sc_counterexample(CounterexampleParams::strongly_convex(1.0, 5.0, 10.0));
  fns.push_back(sc.mean);
  auto cvx = make_cvx_counterexample(CounterexampleParams::convex(1.0, 1.0, 1.0));
  fns.push_back(cvx.mean);

  SplitMix64 rng(2024);
  OptimizerConfig cfg;
  cfg.variant = Variant::DetSam;
  cfg.rho = 0.8;
  cfg.eta = 0.07;
  for (const auto& f : fns) {
    VirtualGradientMap map{f, cfg.rho, cfg.zero_grad_eps};
    for (int i = 0; i < 1000; ++i) {
      Vec x = Vec::zeros(f.dim);
      for (int k = 0; k < f.dim; ++k)
        x[k] = f.meta.box.lo[k] + rng.next_unit() * (f.meta.box.hi[k] - f.meta.box.lo[k]);
      Vec via_map = x - cfg.eta * eval_virtual_gradient(map, x);
      auto [via_step, rec] = det_sam_step(f, x, cfg);
      CHECK((via_map - via_step).norm() <= 1e-12);
    }
  }
}
