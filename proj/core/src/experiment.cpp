#include "samlab/experiment.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "samlab/errors.h"

namespace samlab {

using nlohmann::json;

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::MinSuboptimality: return "min-suboptimality";
    case Metric::MeanSqGradNorm: return "mean-sq-grad-norm";
    case Metric::FinalSuboptimality: return "final-suboptimality";
    case Metric::MinGradNorm: return "min-grad-norm";
  }
  return "?";
}

Metric metric_from_name(const std::string& name) {
  if (name == "min-suboptimality") return Metric::MinSuboptimality;
  if (name == "mean-sq-grad-norm") return Metric::MeanSqGradNorm;
  if (name == "final-suboptimality") return Metric::FinalSuboptimality;
  if (name == "min-grad-norm") return Metric::MinGradNorm;
  throw UsageError("unknown metric: " + name);
}

void ExperimentConfig::validate() const {
  optimizer.validate();
  if (sweep.empty()) throw UsageError("experiment: sweep must be nonempty");
  for (size_t i = 0; i + 1 < sweep.size(); ++i)
    if (sweep[i] >= sweep[i + 1]) throw UsageError("experiment: sweep must be strictly increasing");
  if (sweep.front() < 1) throw UsageError("experiment: sweep entries must be >= 1");
  if (trials < 1) throw UsageError("experiment: trials must be >= 1");
  if (x0.empty() && schedule != "lb-case2")
    throw UsageError("experiment: x0 is required");
}

namespace {

json function_to_json(const FunctionSpec& f) {
  json j;
  j["id"] = f.id;
  j["beta"] = f.beta;
  j["mu"] = f.mu;
  j["rho"] = f.rho;
  j["sigma"] = f.sigma;
  j["p"] = f.p;
  j["c"] = f.c < 0.0 ? 2.0 * f.rho : f.c;
  if (f.noise > 0.0) j["noise"] = f.noise;
  return j;
}

FunctionSpec function_from_json(const json& j) {
  FunctionSpec f;
  f.id = j.at("id").get<std::string>();
  if (j.contains("beta")) f.beta = j["beta"].get<double>();
  if (j.contains("mu")) f.mu = j["mu"].get<double>();
  if (j.contains("rho")) f.rho = j["rho"].get<double>();
  if (j.contains("sigma")) f.sigma = j["sigma"].get<double>();
  if (j.contains("p")) f.p = j["p"].get<double>();
  if (j.contains("c")) f.c = j["c"].get<double>();
  if (j.contains("noise")) f.noise = j["noise"].get<double>();
  return f;
}

json optimizer_to_json(const OptimizerConfig& o) {
  json j;
  j["variant"] = variant_name(o.variant);
  j["rho"] = o.rho;
  j["eta"] = o.eta;
  j["zero_grad_eps"] = o.zero_grad_eps;
  j["seed"] = o.seed;
  return j;
}

OptimizerConfig optimizer_from_json(const json& j) {
  OptimizerConfig o;
  o.variant = variant_from_name(j.at("variant").get<std::string>());
  if (j.contains("rho")) o.rho = j["rho"].get<double>();
  if (j.contains("eta")) o.eta = j["eta"].get<double>();
  if (j.contains("zero_grad_eps")) o.zero_grad_eps = j["zero_grad_eps"].get<double>();
  if (j.contains("seed")) o.seed = j["seed"].get<uint64_t>();
  return o;
}

}  // namespace

std::string experiment_to_json(const ExperimentConfig& cfg) {
  json j;
  j["function"] = function_to_json(cfg.function);
  j["optimizer"] = optimizer_to_json(cfg.optimizer);
  j["metric"] = metric_name(cfg.metric);
  j["x0"] = cfg.x0;
  j["sweep"] = cfg.sweep;
  j["trials"] = cfg.trials;
  j["schedule"] = cfg.schedule;
  return j.dump(2);
}

ExperimentConfig experiment_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.function = function_from_json(j.at("function"));
    cfg.optimizer = optimizer_from_json(j.at("optimizer"));
    if (j.contains("metric")) cfg.metric = metric_from_name(j["metric"].get<std::string>());
    if (j.contains("x0")) cfg.x0 = j["x0"].get<std::vector<double>>();
    if (j.contains("sweep")) cfg.sweep = j["sweep"].get<std::vector<long>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("schedule")) cfg.schedule = j["schedule"].get<std::string>();
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
}

ExperimentConfig experiment_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return experiment_from_json_text(ss.str());
}

}  // namespace samlab
