#include "samlab/optimizer.h"

#include <sstream>

#include "samlab/errors.h"

namespace samlab {

namespace {

void check_finite(const Vec& v, const char* what) {
  if (!v.all_finite()) {
    std::ostringstream os;
    os << "non-finite " << what << " (";
    for (int i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    throw NonFiniteError(os.str());
  }
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Gd: return "gd";
    case Variant::Usam: return "usam";
    case Variant::DetSam: return "det-sam";
    case Variant::NSam: return "n-sam";
    case Variant::MSam: return "m-sam";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "gd") return Variant::Gd;
  if (name == "usam") return Variant::Usam;
  if (name == "det-sam") return Variant::DetSam;
  if (name == "n-sam") return Variant::NSam;
  if (name == "m-sam") return Variant::MSam;
  throw UsageError("unknown optimizer variant: " + name +
                   " (expected gd, usam, det-sam, n-sam, m-sam)");
}

bool is_stochastic(Variant v) { return v == Variant::NSam || v == Variant::MSam; }

void OptimizerConfig::validate() const {
  if (!(eta > 0.0)) throw UsageError("optimizer config: eta must be > 0");
  if (!(zero_grad_eps > 0.0)) throw UsageError("optimizer config: zero_grad_eps must be > 0");
  if (variant != Variant::Gd && !(rho > 0.0))
    throw UsageError("optimizer config: rho must be > 0 for SAM variants");
}

Vec perturbed_point(const Vec& x, const Vec& g, double rho, double eps) {
  double n = g.norm();
  if (n <= eps) return x;
  return x + (rho / n) * g;
}

std::pair<Vec, StepRecord> det_sam_step(const ObjectiveFunction& f, const Vec& x,
                                        const OptimizerConfig& cfg) {
  check_finite(x, "iterate");
  Vec g = f.gradient(x);
  check_finite(g, "gradient at x");
  Vec y = perturbed_point(x, g, cfg.rho, cfg.zero_grad_eps);
  Vec gy = f.gradient(y);
  check_finite(gy, "gradient at perturbed point");
  Vec next = x - cfg.eta * gy;
  check_finite(next, "updated iterate");
  StepRecord rec;
  rec.x = x;
  rec.y = y;
  rec.grad_norm_at_x = g.norm();
  return {next, rec};
}

std::pair<Vec, StepRecord> gd_step(const ObjectiveFunction& f, const Vec& x,
                                   const OptimizerConfig& cfg) {
  check_finite(x, "iterate");
  Vec g = f.gradient(x);
  check_finite(g, "gradient at x");
  Vec next = x - cfg.eta * g;
  check_finite(next, "updated iterate");
  StepRecord rec;
  rec.x = x;
  rec.grad_norm_at_x = g.norm();
  return {next, rec};
}

std::pair<Vec, StepRecord> usam_step(const ObjectiveFunction& f, const Vec& x,
                                     const OptimizerConfig& cfg) {
  check_finite(x, "iterate");
  Vec g = f.gradient(x);
  check_finite(g, "gradient at x");
  Vec y = x + cfg.rho * g;  // no normalization, no zero-gradient branch
  Vec gy = f.gradient(y);
  check_finite(gy, "gradient at perturbed point");
  Vec next = x - cfg.eta * gy;
  check_finite(next, "updated iterate");
  StepRecord rec;
  rec.x = x;
  rec.y = y;
  rec.grad_norm_at_x = g.norm();
  return {next, rec};
}

StochStepResult stochastic_sam_step(const StochasticObjective& obj, const Vec& x,
                                    const OptimizerConfig& cfg, SplitMix64 rng) {
  if (!is_stochastic(cfg.variant))
    throw UsageError("stochastic_sam_step requires variant n-sam or m-sam");
  check_finite(x, "iterate");
  int xi = rng.sample_index(obj.cumulative);
  int xi_tilde = cfg.variant == Variant::MSam ? xi : rng.sample_index(obj.cumulative);

  Vec g = obj.components[static_cast<size_t>(xi)].gradient(x);
  check_finite(g, "sampled gradient at x");
  Vec y = perturbed_point(x, g, cfg.rho, cfg.zero_grad_eps);
  Vec gy = obj.components[static_cast<size_t>(xi_tilde)].gradient(y);
  check_finite(gy, "sampled gradient at perturbed point");
  Vec next = x - cfg.eta * gy;
  check_finite(next, "updated iterate");

  StepRecord rec;
  rec.x = x;
  rec.y = y;
  rec.ascent_component = xi;
  rec.descent_component = xi_tilde;
  rec.grad_norm_at_x = obj.mean.gradient(x).norm();
  return {next, rec, rng};
}

}  // namespace samlab
