#include "samlab/figures.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "samlab/catalog.h"
#include "samlab/errors.h"
#include "samlab/harness.h"
#include "samlab/trajectory.h"

namespace samlab {

namespace {

using nlohmann::json;

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_config(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  os << j.dump(2) << '\n';
}

// Shared fig1 settings. The start sits off the minimum curve x*y = 1; eta and
// rho are small enough that the SAM oscillation across the curve keeps
// |xy - 1| < 1e-3 while still drifting along the curve towards (1, 1).
struct Fig1Settings {
  Vec x0{0.3, 4.0};
  double eta = 0.002;
  double rho = 0.1;
  long T = 10000;
};

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig4a", "fig4b", "fig4c"};
  return ids;
}

FigureResult reproduce_figure(const std::string& fig_id, const std::string& out_dir,
                              uint64_t seed) {
  std::filesystem::create_directories(out_dir);
  FigureResult result;
  result.fig_id = fig_id;

  if (fig_id == "fig1") {
    Fig1Settings s;
    Objective obj;
    obj.det = make_hyperbola();
    const Vec flattest(1.0, 1.0);

    json cfg;
    cfg["figure"] = "fig1";
    cfg["function"] = "hyperbola";
    cfg["x0"] = {s.x0[0], s.x0[1]};
    cfg["eta"] = s.eta;
    cfg["rho"] = s.rho;
    cfg["steps"] = s.T;

    for (Variant v : {Variant::Gd, Variant::Usam, Variant::DetSam}) {
      OptimizerConfig opt;
      opt.variant = v;
      opt.eta = s.eta;
      opt.rho = s.rho;
      opt.seed = seed;
      Trajectory traj = run_trajectory(obj, s.x0, opt, s.T, 0, /*record_steps=*/false);
      std::string path = join(out_dir, "fig1_" + variant_name(v) + ".csv");
      save_trajectory_csv(traj, path);
      result.artifacts.push_back(path);

      const Vec& xf = traj.final_iterate();
      double dist = distance(xf, flattest);
      double constraint = std::abs(xf[0] * xf[1] - 1.0);
      if (v == Variant::Gd) {
        result.gd_dist_to_flattest = dist;
        result.gd_final_constraint = constraint;
      } else if (v == Variant::Usam) {
        result.usam_dist_to_flattest = dist;
        result.usam_final_constraint = constraint;
      } else {
        result.sam_dist_to_flattest = dist;
        result.sam_final_constraint = constraint;
        result.final_iterate = xf;
      }
    }
    std::string cfg_path = join(out_dir, "fig1_config.json");
    write_config(cfg_path, cfg);
    result.artifacts.push_back(cfg_path);
    return result;
  }

  // The three x-vs-epoch panels.
  FunctionSpec fn;
  OptimizerConfig opt;
  opt.seed = seed;
  Vec x0;
  long T = 10000;

  if (fig_id == "fig4a") {
    fn.id = "sine";
    fn.beta = 1.0;
    fn.rho = 1.0;
    opt.variant = Variant::DetSam;
    opt.rho = 1.0;
    opt.eta = 0.5;
    x0 = Vec(0.4);
  } else if (fig_id == "fig4b") {
    fn.id = "sc-counter";
    fn.beta = 5.0;
    fn.rho = 1.0;
    fn.sigma = 10.0;
    opt.variant = Variant::MSam;
    opt.rho = 1.0;
    opt.eta = 0.06;  // theorem cap 3/(10 beta)
    x0 = Vec(4.0);
  } else if (fig_id == "fig4c") {
    fn.id = "cvx-counter";
    fn.beta = 1.0;
    fn.rho = 1.0;
    fn.sigma = 1.0;
    fn.p = 0.75;
    fn.c = 2.0;
    opt.variant = Variant::MSam;
    opt.rho = 1.0;
    opt.eta = 1.0;  // theorem cap 1/beta
    x0 = Vec(9.0);
  } else {
    throw UsageError("unknown figure id: " + fig_id + " (expected fig1, fig4a, fig4b, fig4c)");
  }

  Objective obj = build_objective(fn);
  Trajectory traj = run_trajectory(obj, x0, opt, T, 0, /*record_steps=*/false);

  std::string traj_path = join(out_dir, fig_id + "_trajectory.csv");
  std::string x_path = join(out_dir, fig_id + "_x_vs_epoch.csv");
  save_trajectory_csv(traj, traj_path);
  save_x_vs_epoch_csv(traj, x_path);
  result.artifacts.push_back(traj_path);
  result.artifacts.push_back(x_path);
  result.final_iterate = traj.final_iterate();

  json cfg;
  cfg["figure"] = fig_id;
  cfg["function"] = fn.id;
  cfg["beta"] = fn.beta;
  cfg["rho"] = fn.rho;
  if (obj.is_stochastic()) cfg["sigma"] = fn.sigma;
  if (fn.id == "cvx-counter") {
    cfg["p"] = fn.p;
    cfg["c"] = fn.c;
  }
  cfg["optimizer"] = variant_name(opt.variant);
  cfg["eta"] = opt.eta;
  cfg["x0"] = {x0[0]};
  cfg["steps"] = T;
  cfg["seed"] = seed;
  std::string cfg_path = join(out_dir, fig_id + "_config.json");
  write_config(cfg_path, cfg);
  result.artifacts.push_back(cfg_path);
  return result;
}

}  // namespace samlab
