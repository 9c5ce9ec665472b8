#include "samlab/catalog.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "samlab/errors.h"

namespace samlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const std::string& what) {
  if (!cond) throw UsageError(what);
}

// sign with sign(0) = +1, per the nonsmooth tie-breaking rule.
double sgn_pos(double t) { return t >= 0.0 ? 1.0 : -1.0; }

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

Box box1d(double lo, double hi) { return Box{Vec(lo), Vec(hi)}; }

// Supremum over the box of sqrt(E ||grad f(x) - grad l(x; xi)||^2), on a
// dense 1-D grid. Stored next to the user-supplied bound sigma.
double compute_achieved_sigma(const StochasticObjective& obj, int n_grid = 2001) {
  const Box& box = obj.mean.meta.box;
  double worst = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    double t = static_cast<double>(i) / (n_grid - 1);
    Vec x(box.lo[0] + t * (box.hi[0] - box.lo[0]));
    Vec gm = obj.mean.gradient(x);
    double second_moment = 0.0;
    for (size_t k = 0; k < obj.components.size(); ++k) {
      Vec d = obj.components[k].gradient(x) - gm;
      second_moment += obj.probabilities[k] * d.norm_sq();
    }
    worst = std::max(worst, second_moment);
  }
  return std::sqrt(worst);
}

void finalize_mixture(StochasticObjective& obj) {
  double sum = 0.0;
  obj.cumulative.clear();
  for (double p : obj.probabilities) {
    require(p > 0.0, "mixture probabilities must be positive");
    sum += p;
    obj.cumulative.push_back(sum);
  }
  require(close(sum, 1.0), "mixture probabilities must sum to 1");
  obj.cumulative.back() = 1.0;
  obj.achieved_sigma = compute_achieved_sigma(obj);
}

}  // namespace

CounterexampleParams CounterexampleParams::strongly_convex(double rho, double beta, double sigma) {
  require(rho > 0.0, "sc-counter requires rho > 0");
  require(beta > 0.0, "sc-counter requires beta > 0");
  require(sigma > 0.0, "sc-counter requires sigma > 0");
  CounterexampleParams p;
  p.rho = rho;
  p.beta = beta;
  p.sigma = sigma;
  p.p = 2.0 / 3.0;
  p.c = (1.0 + p.p / 4.0) * rho;  // 7 rho / 6
  p.a = std::min(beta / 5.0, sigma / (5.0 * rho));
  p.c_prime = p.p * p.c / (1.0 + p.p);
  return p;
}

CounterexampleParams CounterexampleParams::convex(double rho, double beta, double sigma, double p,
                                                  double c) {
  require(rho > 0.0, "cvx-counter requires rho > 0");
  require(beta > 0.0, "cvx-counter requires beta > 0");
  require(sigma > 0.0, "cvx-counter requires sigma > 0");
  if (c < 0.0) c = 2.0 * rho;
  CounterexampleParams out;
  out.rho = rho;
  out.beta = beta;
  out.sigma = sigma;
  out.p = p;
  out.c = c;
  out.a = std::min(beta * rho * (1.0 - p) / (8.0 * p), sigma * std::sqrt(1.0 - p) / (3.0 * std::sqrt(p)));
  out.c_prime = c - rho / (8.0 * p);
  return out;
}

ObjectiveFunction make_quadratic_lb(int lb_case, double beta, double mu, double rho) {
  require(rho > 0.0, "quad-lb requires rho > 0");
  require(beta > 0.0, "quad-lb requires beta > 0");
  require(beta >= 2.0 * mu, "quad-lb requires beta >= 2*mu");

  ObjectiveFunction f;
  f.dim = 1;
  f.meta.smooth = true;
  f.meta.convex = true;
  f.meta.box = box1d(-3.0 * rho, 3.0 * rho);

  switch (lb_case) {
    case 1:
      require(mu > 0.0, "quad-lb-1 requires mu > 0");
      f.id = "quad-lb-1";
      f.value = [mu, rho](const Vec& x) { return 0.5 * mu * x[0] * x[0] - mu * rho * x[0]; };
      f.gradient = [mu, rho](const Vec& x) { return Vec(mu * (x[0] - rho)); };
      f.meta.beta = beta;
      f.meta.mu = mu;
      f.meta.f_star = -0.5 * mu * rho * rho;
      f.meta.x_star = Vec(rho);
      break;
    case 2:
      f.id = "quad-lb-2";
      f.value = [beta](const Vec& x) { return 0.25 * beta * x[0] * x[0]; };
      f.gradient = [beta](const Vec& x) { return Vec(0.5 * beta * x[0]); };
      f.meta.beta = beta;
      f.meta.mu = 0.5 * beta;  // beta x^2/4 has curvature beta/2
      f.meta.f_star = 0.0;
      f.meta.x_star = Vec(0.0);
      break;
    case 3:
      f.id = "quad-lb-3";
      f.value = [beta](const Vec& x) { return 0.5 * beta * x[0] * x[0]; };
      f.gradient = [beta](const Vec& x) { return Vec(beta * x[0]); };
      f.meta.beta = beta;
      f.meta.mu = beta;
      f.meta.f_star = 0.0;
      f.meta.x_star = Vec(0.0);
      break;
    default:
      throw UsageError("quad-lb case must be 1, 2, or 3");
  }
  return f;
}

ObjectiveFunction make_sine_example(double beta, double rho) {
  require(beta > 0.0, "sine requires beta > 0");
  require(rho > 0.0, "sine requires rho > 0");
  const double pi = std::numbers::pi;
  const double amp = 9.0 * beta * rho * rho / (25.0 * pi * pi);
  const double freq = 5.0 * pi / (3.0 * rho);
  const double grad_amp = amp * freq;  // = 3 beta rho / (5 pi)

  ObjectiveFunction f;
  f.id = "sine";
  f.dim = 1;
  f.value = [amp, freq](const Vec& x) { return amp * std::sin(freq * x[0]); };
  f.gradient = [grad_amp, freq](const Vec& x) { return Vec(grad_amp * std::cos(freq * x[0])); };
  f.meta.beta = beta;  // |f''| = beta exactly at the extrema of sin
  f.meta.mu = 0.0;
  f.meta.lipschitz = grad_amp;
  f.meta.f_star = -amp;
  f.meta.x_star = Vec(-0.3 * rho);
  f.meta.smooth = true;
  f.meta.convex = false;
  f.meta.box = box1d(-3.0 * rho, 3.0 * rho);
  return f;
}

ObjectiveFunction make_nonsmooth_max() {
  ObjectiveFunction f;
  f.id = "nonsmooth-max";
  f.dim = 2;
  f.value = [](const Vec& x) { return std::max(std::abs(x[0]), std::abs(2.0 * x[0] + x[1])); };
  // First-listed active branch wins ties; sign(0) = +1 inside |.|.
  f.gradient = [](const Vec& x) {
    double b1 = std::abs(x[0]);
    double b2 = std::abs(2.0 * x[0] + x[1]);
    if (b1 >= b2) return Vec(sgn_pos(x[0]), 0.0);
    double s = sgn_pos(2.0 * x[0] + x[1]);
    return Vec(2.0 * s, s);
  };
  f.meta.beta = kInf;
  f.meta.mu = 0.0;
  f.meta.lipschitz = std::sqrt(5.0);
  f.meta.f_star = 0.0;
  f.meta.x_star = Vec(0.0, 0.0);
  f.meta.smooth = false;
  f.meta.convex = true;
  f.meta.box = Box{Vec(-3.0, -3.0), Vec(3.0, 3.0)};
  return f;
}

StochasticObjective make_sc_counterexample(const CounterexampleParams& q) {
  require(q.rho > 0.0, "sc-counter constraint failed: rho > 0");
  require(q.beta > 0.0, "sc-counter constraint failed: beta > 0");
  require(q.sigma > 0.0, "sc-counter constraint failed: sigma > 0");
  require(close(q.p, 2.0 / 3.0), "sc-counter constraint failed: p = 2/3");
  require(close(q.c, (1.0 + q.p / 4.0) * q.rho), "sc-counter constraint failed: c = (1 + p/4) rho");
  require(close(q.a, std::min(q.beta / 5.0, q.sigma / (5.0 * q.rho))),
          "sc-counter constraint failed: a = min{beta/5, sigma/(5 rho)}");
  require(close(q.c_prime, q.p * q.c / (1.0 + q.p)),
          "sc-counter constraint failed: c' = p c / (1 + p)");

  const double a = q.a, c = q.c, rho = q.rho, p = q.p;
  const double q1 = 1.0 / (1.0 - p);  // = 3

  // f1: concave cap of curvature -a on [c-rho, c+rho], quadratic tails.
  ObjectiveFunction f1;
  f1.id = "sc-counter/f1";
  f1.dim = 1;
  f1.value = [a, c, rho](const Vec& v) {
    double x = v[0];
    if (x <= c - rho) return 0.5 * a * (x - c + 2.0 * rho) * (x - c + 2.0 * rho) - a * rho * rho;
    if (x >= c + rho) return 0.5 * a * (x - c - 2.0 * rho) * (x - c - 2.0 * rho) - a * rho * rho;
    return -0.5 * a * (x - c) * (x - c);
  };
  f1.gradient = [a, c, rho](const Vec& v) {
    double x = v[0];
    if (x <= c - rho) return Vec(a * (x - c + 2.0 * rho));
    if (x >= c + rho) return Vec(a * (x - c - 2.0 * rho));
    return Vec(-a * (x - c));
  };
  f1.meta.beta = a;
  f1.meta.mu = 0.0;
  f1.meta.f_star = -a * rho * rho;
  f1.meta.x_star = Vec(c - 2.0 * rho);
  f1.meta.smooth = true;
  f1.meta.convex = false;
  f1.meta.box = box1d(-3.0 * rho, 3.0 * rho);

  // f2 = (f - p f1)/(1-p); curvature between a and a(1+p)/(1-p).
  ObjectiveFunction f2;
  f2.id = "sc-counter/f2";
  f2.dim = 1;
  f2.value = [a, c, rho, p, q1](const Vec& v) {
    double x = v[0];
    double fx = 0.5 * a * x * x;
    if (x <= c - rho)
      return q1 * (fx - 0.5 * p * a * (x - c + 2.0 * rho) * (x - c + 2.0 * rho) + p * a * rho * rho);
    if (x >= c + rho)
      return q1 * (fx - 0.5 * p * a * (x - c - 2.0 * rho) * (x - c - 2.0 * rho) + p * a * rho * rho);
    return q1 * (fx + 0.5 * p * a * (x - c) * (x - c));
  };
  f2.gradient = [a, c, rho, p, q1](const Vec& v) {
    double x = v[0];
    if (x <= c - rho) return Vec(q1 * (a * x - p * a * (x - c + 2.0 * rho)));
    if (x >= c + rho) return Vec(q1 * (a * x - p * a * (x - c - 2.0 * rho)));
    return Vec(q1 * (a * x + p * a * (x - c)));
  };
  f2.meta.beta = a * (1.0 + p) / (1.0 - p);
  f2.meta.mu = a;
  f2.meta.smooth = true;
  f2.meta.convex = true;
  f2.meta.x_star = Vec(q.c_prime);
  f2.meta.f_star = f2.value(Vec(q.c_prime));
  f2.meta.box = box1d(-3.0 * rho, 3.0 * rho);

  ObjectiveFunction mean;
  mean.id = "sc-counter";
  mean.dim = 1;
  mean.value = [a](const Vec& v) { return 0.5 * a * v[0] * v[0]; };
  mean.gradient = [a](const Vec& v) { return Vec(a * v[0]); };
  mean.meta.beta = q.beta;  // component-level smoothness bound
  mean.meta.mu = a;
  mean.meta.f_star = 0.0;
  mean.meta.x_star = Vec(0.0);
  mean.meta.smooth = true;
  mean.meta.convex = true;
  mean.meta.box = box1d(-3.0 * rho, 3.0 * rho);

  StochasticObjective obj;
  obj.components = {f1, f2};
  obj.probabilities = {p, 1.0 - p};
  obj.mean = mean;
  obj.sigma = q.sigma;
  finalize_mixture(obj);
  return obj;
}

StochasticObjective make_cvx_counterexample(const CounterexampleParams& q) {
  require(q.rho > 0.0, "cvx-counter constraint failed: rho > 0");
  require(q.beta > 0.0, "cvx-counter constraint failed: beta > 0");
  require(q.sigma > 0.0, "cvx-counter constraint failed: sigma > 0");
  require(q.p > 0.5 && q.p < 1.0, "cvx-counter constraint failed: p in (1/2, 1)");
  require(q.c > 1.25 * q.rho, "cvx-counter constraint failed: c > 5 rho / 4");
  require(close(q.a, std::min(q.beta * q.rho * (1.0 - q.p) / (8.0 * q.p),
                              q.sigma * std::sqrt(1.0 - q.p) / (3.0 * std::sqrt(q.p)))),
          "cvx-counter constraint failed: a = min{beta rho (1-p)/(8p), sigma sqrt(1-p)/(3 sqrt p)}");
  require(close(q.c_prime, q.c - q.rho / (8.0 * q.p)),
          "cvx-counter constraint failed: c' = c - rho/(8p)");

  const double a = q.a, c = q.c, rho = q.rho, p = q.p, beta = q.beta;
  const double q1 = 1.0 / (1.0 - p);
  const double box_hi = std::max(3.0 * rho, c + 2.0 * rho);

  // f1 rewards moving right past c; its cap at c carves the m-SAM trap.
  ObjectiveFunction f1;
  f1.id = "cvx-counter/f1";
  f1.dim = 1;
  f1.value = [a, c, rho, beta](const Vec& v) {
    double x = v[0];
    if (x <= 0.0) return 2.0 * a * (x - c + rho / 8.0) + 0.5 * beta * x * x;
    if (x <= c - rho / 4.0) return 2.0 * a * (x - c + rho / 8.0);
    if (x <= c + rho / 4.0) return -(4.0 * a / rho) * (x - c) * (x - c);
    return -2.0 * a * (x - c - rho / 8.0);
  };
  f1.gradient = [a, c, rho, beta](const Vec& v) {
    double x = v[0];
    if (x <= 0.0) return Vec(2.0 * a + beta * x);
    if (x <= c - rho / 4.0) return Vec(2.0 * a);
    if (x <= c + rho / 4.0) return Vec(-(8.0 * a / rho) * (x - c));
    return Vec(-2.0 * a);
  };
  f1.meta.beta = std::max(8.0 * a / rho, beta);
  f1.meta.mu = 0.0;
  f1.meta.f_star = -kInf;  // decreases without bound as x -> +inf
  f1.meta.smooth = true;
  f1.meta.convex = false;
  f1.meta.box = box1d(-3.0 * rho, box_hi);

  ObjectiveFunction f2;
  f2.id = "cvx-counter/f2";
  f2.dim = 1;
  f2.value = [a, c, rho, beta, p, q1](const Vec& v) {
    double x = v[0];
    if (x <= 0.0) return q1 * (a * x - 2.0 * p * a * (x - c + rho / 8.0)) + 0.5 * beta * x * x;
    if (x <= c - rho / 4.0) return q1 * (a * x - 2.0 * p * a * (x - c + rho / 8.0));
    if (x <= c + rho / 4.0) return q1 * (a * x + (4.0 * p * a / rho) * (x - c) * (x - c));
    return q1 * (a * x + 2.0 * p * a * (x - c - rho / 8.0));
  };
  f2.gradient = [a, c, rho, beta, p, q1](const Vec& v) {
    double x = v[0];
    if (x <= 0.0) return Vec(q1 * (a - 2.0 * p * a) + beta * x);
    if (x <= c - rho / 4.0) return Vec(q1 * (a - 2.0 * p * a));
    if (x <= c + rho / 4.0) return Vec(q1 * (a + (8.0 * p * a / rho) * (x - c)));
    return Vec(q1 * (a + 2.0 * p * a));
  };
  f2.meta.beta = std::max(8.0 * a * p / (rho * (1.0 - p)), beta);
  f2.meta.mu = 0.0;
  f2.meta.smooth = true;
  f2.meta.convex = true;
  f2.meta.x_star = Vec(q.c_prime);
  f2.meta.f_star = f2.value(Vec(q.c_prime));
  f2.meta.box = box1d(-3.0 * rho, box_hi);

  ObjectiveFunction mean;
  mean.id = "cvx-counter";
  mean.dim = 1;
  mean.value = [a, beta](const Vec& v) {
    double x = v[0];
    return x <= 0.0 ? a * x + 0.5 * beta * x * x : a * x;
  };
  mean.gradient = [a, beta](const Vec& v) {
    double x = v[0];
    return x <= 0.0 ? Vec(a + beta * x) : Vec(a);
  };
  mean.meta.beta = beta;
  mean.meta.mu = 0.0;
  mean.meta.f_star = -a * a / (2.0 * beta);
  mean.meta.x_star = Vec(-a / beta);
  mean.meta.smooth = true;
  mean.meta.convex = true;
  mean.meta.box = box1d(-3.0 * rho, box_hi);

  StochasticObjective obj;
  obj.components = {f1, f2};
  obj.probabilities = {p, 1.0 - p};
  obj.mean = mean;
  obj.sigma = q.sigma;
  finalize_mixture(obj);
  return obj;
}

ObjectiveFunction make_hyperbola() {
  ObjectiveFunction f;
  f.id = "hyperbola";
  f.dim = 2;
  f.value = [](const Vec& x) {
    double r = x[0] * x[1] - 1.0;
    return r * r;
  };
  f.gradient = [](const Vec& x) {
    double r = x[0] * x[1] - 1.0;
    return Vec(2.0 * x[1] * r, 2.0 * x[0] * r);
  };
  // Hessian row-sum bound on [-3,3]^2: 2 max(x^2, y^2) + |4xy - 2| <= 56.
  f.meta.beta = 56.0;
  f.meta.mu = 0.0;
  f.meta.f_star = 0.0;
  f.meta.x_star = Vec(1.0, 1.0);
  f.meta.smooth = true;
  f.meta.convex = false;
  f.meta.box = Box{Vec(-3.0, -3.0), Vec(3.0, 3.0)};
  return f;
}

StochasticObjective with_affine_noise(const ObjectiveFunction& f, double noise_scale) {
  require(noise_scale > 0.0, "affine noise scale must be positive");
  StochasticObjective obj;
  for (double sign : {+1.0, -1.0}) {
    ObjectiveFunction comp = f;
    comp.id = f.id + (sign > 0 ? "/noise+" : "/noise-");
    auto base_value = f.value;
    auto base_grad = f.gradient;
    double s = sign * noise_scale;
    comp.value = [base_value, s](const Vec& x) { return base_value(x) + s * x[0]; };
    comp.gradient = [base_grad, s](const Vec& x) {
      Vec g = base_grad(x);
      g[0] += s;
      return g;
    };
    comp.meta.f_star = -kInf;  // linear tilt unbounded below
    comp.meta.x_star.reset();
    comp.meta.convex = f.meta.convex;
    obj.components.push_back(std::move(comp));
    obj.probabilities.push_back(0.5);
  }
  obj.mean = f;
  obj.sigma = noise_scale;
  finalize_mixture(obj);
  return obj;
}

Objective build_objective(const FunctionSpec& spec) {
  Objective out;
  if (spec.id == "quad-lb-1") {
    out.det = make_quadratic_lb(1, spec.beta, spec.mu, spec.rho);
  } else if (spec.id == "quad-lb-2") {
    out.det = make_quadratic_lb(2, spec.beta, std::min(spec.mu, spec.beta / 2.0), spec.rho);
  } else if (spec.id == "quad-lb-3") {
    out.det = make_quadratic_lb(3, spec.beta, std::min(spec.mu, spec.beta / 2.0), spec.rho);
  } else if (spec.id == "sine") {
    out.det = make_sine_example(spec.beta, spec.rho);
  } else if (spec.id == "nonsmooth-max") {
    out.det = make_nonsmooth_max();
  } else if (spec.id == "sc-counter") {
    out.stoch = make_sc_counterexample(
        CounterexampleParams::strongly_convex(spec.rho, spec.beta, spec.sigma));
  } else if (spec.id == "cvx-counter") {
    out.stoch = make_cvx_counterexample(
        CounterexampleParams::convex(spec.rho, spec.beta, spec.sigma, spec.p, spec.c));
  } else if (spec.id == "hyperbola") {
    out.det = make_hyperbola();
  } else {
    throw UsageError("unknown function id: " + spec.id);
  }
  if (spec.noise > 0.0) {
    require(!out.stoch, "gradient noise applies to deterministic functions only");
    out.stoch = with_affine_noise(*out.det, spec.noise);
    out.det.reset();
  }
  return out;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"quad-lb-1", "mu x^2/2 - mu rho x (shifted strongly convex quadratic)", "beta, mu, rho", false, 1},
      {"quad-lb-2", "beta x^2/4 (SAM oscillation construction)", "beta, rho", false, 1},
      {"quad-lb-3", "beta x^2/2 (blow-up regime construction)", "beta, rho", false, 1},
      {"sine", "(9 beta rho^2/25 pi^2) sin(5 pi x/(3 rho))", "beta, rho", false, 1},
      {"nonsmooth-max", "max{|x1|, |2x1+x2|}", "none", false, 2},
      {"sc-counter", "strongly convex two-component mixture, mean a x^2/2", "beta, rho, sigma", true, 1},
      {"cvx-counter", "convex two-component mixture with basin at c", "beta, rho, sigma, p, c", true, 1},
      {"hyperbola", "(x y - 1)^2", "none", false, 2},
  };
  return entries;
}

}  // namespace samlab
