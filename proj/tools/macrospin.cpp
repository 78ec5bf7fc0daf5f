// macrospin: command-line driver for s-LLGS macrospin studies.
//
// Subcommands: simulate, convergence, weak-convergence, switchmap, delay-pdf,
// init-angle, norm-study, dtcrit. All runs are driven by a JSON config;
// flags override config values. Exit codes: 0 ok, 2 config error, 3 solver
// failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "llgs/dynamics.hpp"
#include "llgs/errors.hpp"
#include "llgs/experiments.hpp"
#include "llgs/kernels.hpp"
#include "llgs/output.hpp"

using nlohmann::json;
using namespace llgs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  std::string bad;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) bad += (bad.empty() ? "" : ", ") + it.key();
  }
  if (!bad.empty()) throw ConfigError("unknown key(s) in " + where + ": " + bad);
}

Vec3 vec3_of(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) throw ConfigError("'" + key + "' must be [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

struct CommonArgs {
  std::string config_path;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string kernel_isa = "auto";
  std::vector<std::string> methods;  // convergence studies: overrides config
};

struct LoadedConfig {
  json root;
  MagnetParams magnet;
  DriveInput drive;
  SolverConfig solver;
  json experiment;
  std::string output = "out.csv";
  std::uint64_t seed = 0;
  int threads = 0;
};

SolverConfig solver_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"method", "dt", "gauss_newton_tol", "gauss_newton_max_iter",
                       "rk4_corrector", "renormalize", "theta_min", "retry_halvings"},
                      "solver");
  SolverConfig s;
  s.method = method_from_name(j.at("method").get<std::string>());
  s.dt = j.at("dt").get<double>();
  if (j.contains("gauss_newton_tol")) s.gauss_newton_tol = j.at("gauss_newton_tol").get<double>();
  if (j.contains("gauss_newton_max_iter"))
    s.gauss_newton_max_iter = j.at("gauss_newton_max_iter").get<int>();
  if (j.contains("rk4_corrector")) s.rk4_corrector = j.at("rk4_corrector").get<bool>();
  if (j.contains("renormalize")) s.renormalize = j.at("renormalize").get<bool>();
  if (j.contains("theta_min")) s.theta_min = j.at("theta_min").get<double>();
  if (j.contains("retry_halvings")) s.retry_halvings = j.at("retry_halvings").get<int>();
  if (s.dt <= 0.0) throw ConfigError("solver.dt must be > 0");
  if (s.gauss_newton_tol <= 0.0) throw ConfigError("solver.gauss_newton_tol must be > 0");
  return s;
}

LoadedConfig load_config(const CommonArgs& args, bool need_solver) {
  if (args.config_path.empty()) throw ConfigError("--config is required");
  std::ifstream f(args.config_path);
  if (!f) throw ConfigError("cannot open config file " + args.config_path);
  json root;
  try {
    root = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  reject_unknown_keys(
      root, {"version", "magnet", "drive", "solver", "experiment", "output", "seed", "threads"},
      "config");
  if (!root.contains("version") || root.at("version").get<int>() != 1)
    throw ConfigError("config must declare \"version\": 1");

  LoadedConfig c;
  c.root = root;
  c.magnet = MagnetParams::from_json(root.at("magnet"));
  c.magnet.validate(&std::cerr);
  if (root.contains("drive")) c.drive = DriveInput::from_json(root.at("drive"));
  if (need_solver) c.solver = solver_from_json(root.at("solver"));
  c.experiment = root.value("experiment", json::object());
  c.output = root.value("output", std::string("out.csv"));
  c.seed = root.value("seed", std::uint64_t{0});
  c.threads = root.value("threads", 0);

  if (!args.output.empty()) c.output = args.output;
  if (args.seed) c.seed = *args.seed;
  if (args.threads) c.threads = *args.threads;
  if (const char* dir = std::getenv("MACROSPIN_OUT_DIR");
      dir && *dir && !c.output.empty() && c.output.front() != '/')
    c.output = std::string(dir) + "/" + c.output;
  return c;
}

json sidecar_base(const LoadedConfig& c, const std::string& experiment) {
  return {{"generator", "macrospin"},
          {"experiment", experiment},
          {"seed", c.seed},
          {"kernel_isa", kernels::isa_name(kernels::active_isa())},
          {"config", c.root}};
}

std::vector<Method> methods_of(const json& arr) {
  std::vector<Method> out;
  for (const auto& v : arr) out.push_back(method_from_name(v.get<std::string>()));
  return out;
}

int cmd_simulate(const CommonArgs& args) {
  LoadedConfig c = load_config(args, true);
  reject_unknown_keys(c.experiment,
                      {"t_final", "m0", "representation", "record_every", "schedule"},
                      "experiment");
  SimulateOptions opt;
  opt.solver = c.solver;
  opt.t_final = c.experiment.at("t_final").get<double>();
  opt.m0 = c.experiment.contains("m0") ? vec3_of(c.experiment.at("m0"), "m0")
                                       : c.magnet.easy_axis;
  if (c.experiment.contains("representation")) {
    const std::string r = c.experiment.at("representation").get<std::string>();
    if (r == "cartesian")
      opt.representation = Representation::Cartesian;
    else if (r == "spherical")
      opt.representation = Representation::Spherical;
    else
      throw ConfigError("representation must be cartesian|spherical");
  }
  opt.record_every = c.experiment.value("record_every", std::size_t{1});
  opt.seed = c.seed;

  DriveSchedule schedule;
  if (c.experiment.contains("schedule")) {
    for (const auto& seg : c.experiment.at("schedule")) {
      reject_unknown_keys(seg, {"t_end", "h_app", "i_s"}, "experiment.schedule[]");
      DriveSegment s;
      s.t_end = seg.at("t_end").get<double>();
      if (seg.contains("h_app")) s.drive.h_app = vec3_of(seg.at("h_app"), "h_app");
      if (seg.contains("i_s")) s.drive.i_s = vec3_of(seg.at("i_s"), "i_s");
      schedule.push_back(s);
    }
  } else {
    schedule.push_back({opt.t_final, c.drive});
  }

  const Trajectory traj = simulate(c.magnet, schedule, opt);

  const bool implicit = method_is_implicit(c.solver.method);
  std::vector<std::string> header = {"time", "mx", "my", "mz", "norm"};
  CsvTable table(header);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    table.add_row({traj.times[i], traj.states[i].x, traj.states[i].y, traj.states[i].z,
                   traj.norms[i]});
  json side = sidecar_base(c, "simulate");
  side["method"] = method_name(traj.method);
  side["max_norm_deviation"] = traj.max_norm_deviation();
  if (implicit && !traj.gn_iterations.empty()) {
    int mx = 0;
    for (int v : traj.gn_iterations) mx = std::max(mx, v);
    side["max_gauss_newton_iterations"] = mx;
  }
  write_csv_with_sidecar(c.output, table, side);
  std::cout << "wrote " << c.output << " (" << traj.times.size() << " samples)\n";
  return kExitOk;
}

int cmd_convergence(const CommonArgs& args) {
  LoadedConfig c = load_config(args, false);
  reject_unknown_keys(c.experiment, {"a", "b", "level_min", "level_max", "n_paths", "methods"},
                      "experiment");
  StrongStudyConfig sc;
  sc.a = c.experiment.value("a", 1.0);
  sc.b = c.experiment.value("b", 0.1);
  sc.level_min = c.experiment.value("level_min", 4);
  sc.level_max = c.experiment.value("level_max", 10);
  sc.n_paths = c.experiment.value("n_paths", 500);
  sc.methods = c.experiment.contains("methods")
                   ? methods_of(c.experiment.at("methods"))
                   : std::vector<Method>{Method::EulerHeun, Method::Heun, Method::ImplicitMidpoint,
                                         Method::Rk4Heun, Method::Rk4HeunCorrected};
  if (!args.methods.empty()) {
    sc.methods.clear();
    for (const auto& name : args.methods) sc.methods.push_back(method_from_name(name));
  }
  sc.seed = c.seed;
  sc.threads = c.threads;
  const auto curves = strong_error_study(sc);

  CsvTable table({"method", "dt", "mean_abs_error", "n_paths", "fitted_order"});
  for (const auto& curve : curves)
    for (std::size_t i = 0; i < curve.dts.size(); ++i)
      table.add_row({std::string(method_name(curve.method)), curve.dts[i], curve.errors[i],
                     static_cast<long long>(curve.n_paths), curve.fitted_order});
  write_csv_with_sidecar(c.output, table, sidecar_base(c, "convergence"));
  for (const auto& curve : curves)
    std::cout << method_name(curve.method) << ": fitted order " << curve.fitted_order << "\n";
  return kExitOk;
}

int cmd_weak_convergence(const CommonArgs& args) {
  LoadedConfig c = load_config(args, false);
  reject_unknown_keys(c.experiment, {"a", "b", "level_min", "level_max", "n_paths", "method"},
                      "experiment");
  WeakStudyConfig wc;
  wc.a = c.experiment.value("a", 1.0);
  wc.b = c.experiment.value("b", 0.1);
  wc.level_min = c.experiment.value("level_min", 3);
  wc.level_max = c.experiment.value("level_max", 8);
  wc.n_paths = c.experiment.value("n_paths", 10000);
  wc.method = method_from_name(
      !args.methods.empty() ? args.methods.front()
                            : c.experiment.value("method", std::string("heun")));
  wc.seed = c.seed;
  wc.threads = c.threads;
  const WeakCurve curve = weak_error_study(wc);

  CsvTable table({"method", "dt", "err_mean", "err_second_moment", "n_paths",
                  "fitted_order_mean", "fitted_order_second"});
  for (std::size_t i = 0; i < curve.dts.size(); ++i)
    table.add_row({std::string(method_name(curve.method)), curve.dts[i], curve.err_mean[i],
                   curve.err_second[i], static_cast<long long>(curve.n_paths),
                   curve.fitted_order_mean, curve.fitted_order_second});
  write_csv_with_sidecar(c.output, table, sidecar_base(c, "weak-convergence"));
  std::cout << "weak orders: mean " << curve.fitted_order_mean << ", second "
            << curve.fitted_order_second << "\n";
  return kExitOk;
}

int cmd_switchmap(const CommonArgs& args) {
  LoadedConfig c = load_config(args, true);
  reject_unknown_keys(c.experiment,
                      {"amplitudes", "durations", "paths_per_cell", "equil_time", "relax_time"},
                      "experiment");
  SwitchMapConfig mc;
  mc.p = c.magnet;
  mc.amplitudes = c.experiment.at("amplitudes").get<std::vector<double>>();
  mc.durations = c.experiment.at("durations").get<std::vector<double>>();
  mc.paths_per_cell = c.experiment.value("paths_per_cell", 200);
  mc.equil_time = c.experiment.value("equil_time", 0.0);
  mc.relax_time = c.experiment.value("relax_time", 0.0);
  mc.solver = c.solver;
  mc.seed = c.seed;
  mc.threads = c.threads;
  const SwitchingMap map = switching_map(mc);

  CsvTable table({"amplitude", "duration", "probability", "paths"});
  for (std::size_t ia = 0; ia < map.amplitudes.size(); ++ia)
    for (std::size_t id = 0; id < map.durations.size(); ++id)
      table.add_row({map.amplitudes[ia], map.durations[id], map.at(ia, id),
                     static_cast<long long>(map.paths_per_cell)});
  write_csv_with_sidecar(c.output, table, sidecar_base(c, "switchmap"));
  std::cout << "wrote " << c.output << " (" << map.probability.size() << " cells)\n";
  return kExitOk;
}

int cmd_delay_pdf(const CommonArgs& args) {
  LoadedConfig c = load_config(args, true);
  reject_unknown_keys(c.experiment, {"n_paths", "equil_time", "horizon", "bins"}, "experiment");
  DelayConfig dc;
  dc.p = c.magnet;
  dc.i_s = c.drive.i_s;
  dc.n_paths = c.experiment.value("n_paths", 500);
  dc.equil_time = c.experiment.value("equil_time", 0.0);
  dc.horizon = c.experiment.at("horizon").get<double>();
  dc.solver = c.solver;
  dc.seed = c.seed;
  dc.threads = c.threads;
  DelayResult res = reversal_delay_pdf(dc);
  if (c.experiment.contains("bins")) {
    res.histogram = Histogram::build(res.delays, c.experiment.at("bins").get<int>());
    res.histogram.overflow = res.n_overflow;
  }

  CsvTable table({"bin_lo", "bin_hi", "count"});
  for (std::size_t i = 0; i < res.histogram.counts.size(); ++i)
    table.add_row({res.histogram.edges[i], res.histogram.edges[i + 1],
                   static_cast<long long>(res.histogram.counts[i])});
  json side = sidecar_base(c, "delay-pdf");
  side["mean_delay"] = res.mean_delay;
  side["n_switched"] = res.delays.size();
  side["n_overflow"] = res.n_overflow;
  side["horizon"] = dc.horizon;
  write_csv_with_sidecar(c.output, table, side);
  std::cout << "mean delay " << res.mean_delay << " (overflow " << res.n_overflow << ")\n";
  return kExitOk;
}

int cmd_init_angle(const CommonArgs& args) {
  LoadedConfig c = load_config(args, true);
  reject_unknown_keys(c.experiment, {"n_paths", "equil_time", "bins"}, "experiment");
  AngleStudyConfig ac;
  ac.p = c.magnet;
  ac.n_paths = c.experiment.value("n_paths", 10000);
  ac.equil_time = c.experiment.at("equil_time").get<double>();
  ac.solver = c.solver;
  ac.seed = c.seed;
  ac.threads = c.threads;
  AngleStudyResult res = initial_angle_distribution(ac);
  if (c.experiment.contains("bins"))
    res.histogram = Histogram::build(res.theta, c.experiment.at("bins").get<int>());

  CsvTable table({"bin_lo", "bin_hi", "count"});
  for (std::size_t i = 0; i < res.histogram.counts.size(); ++i)
    table.add_row({res.histogram.edges[i], res.histogram.edges[i + 1],
                   static_cast<long long>(res.histogram.counts[i])});
  json side = sidecar_base(c, "init-angle");
  side["n_paths"] = ac.n_paths;
  side["equil_time"] = ac.equil_time;
  write_csv_with_sidecar(c.output, table, side);
  std::cout << "wrote " << c.output << "\n";
  return kExitOk;
}

int cmd_norm_study(const CommonArgs& args) {
  LoadedConfig c = load_config(args, false);
  reject_unknown_keys(c.experiment, {"methods", "dts", "t_final", "n_paths", "gauss_newton_tol"},
                      "experiment");
  NormStudyConfig nc;
  nc.p = c.magnet;
  nc.drive = c.drive;
  nc.methods = methods_of(c.experiment.at("methods"));
  nc.dts = c.experiment.at("dts").get<std::vector<double>>();
  nc.t_final = c.experiment.at("t_final").get<double>();
  nc.n_paths = c.experiment.value("n_paths", 4);
  nc.newton.tol = c.experiment.value("gauss_newton_tol", 1e-12);
  nc.seed = c.seed;
  nc.threads = c.threads;
  const NormStudyResult res = norm_deviation_study(nc);

  CsvTable table({"kind", "method", "method_b", "dt", "value"});
  for (const auto& d : res.deviations)
    table.add_row({std::string("deviation"), std::string(method_name(d.method)), std::string(""),
                   d.dt, d.max_norm_deviation});
  for (const auto& d : res.differences)
    table.add_row({std::string("difference"), std::string(method_name(d.a)),
                   std::string(method_name(d.b)), d.dt, d.max_difference});
  write_csv_with_sidecar(c.output, table, sidecar_base(c, "norm-study"));
  std::cout << "wrote " << c.output << "\n";
  return kExitOk;
}

struct DtcritArgs {
  double hk_ratio = -1.0;
  double happ = -1.0;
  double is_mag = -1.0;
  double nu = 0.0;
  bool has_flags() const { return hk_ratio >= 0.0; }
};

int cmd_dtcrit(const CommonArgs& args, const DtcritArgs& d) {
  double value;
  if (d.has_flags()) {
    const double eps = d.hk_ratio + 1.0 + d.nu;
    value = 0.1 / std::max((d.happ < 0 ? 0.0 : d.happ) + eps, d.is_mag < 0 ? 0.0 : d.is_mag);
  } else {
    LoadedConfig c = load_config(args, false);
    value = critical_dt(c.magnet, c.drive);
  }
  std::printf("%.6f\n", value);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macrospin: stochastic LLGS macrospin toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  DtcritArgs dtcrit_args;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", common.config_path, "JSON config file");
    if (config_required) c->required();
    sub->add_option("--output", common.output, "output CSV path (overrides config)");
    sub->add_option("--seed", common.seed, "master seed (overrides config)");
    sub->add_option("--threads", common.threads, "worker threads, 0 = hardware");
    sub->add_option("--kernel-isa", common.kernel_isa, "kernel lane: auto|scalar|avx2|neon");
  };

  add_common(app.add_subcommand("simulate", "single trajectory"), true);
  auto* conv = app.add_subcommand("convergence", "strong-convergence study on the test SDE");
  add_common(conv, true);
  conv->add_option("--method", common.methods, "restrict to the named method(s)");
  auto* weak = app.add_subcommand("weak-convergence", "weak-convergence study on the test SDE");
  add_common(weak, true);
  weak->add_option("--method", common.methods, "method to study");
  add_common(app.add_subcommand("switchmap", "switching-probability map"), true);
  add_common(app.add_subcommand("delay-pdf", "reversal-delay distribution"), true);
  add_common(app.add_subcommand("init-angle", "thermal initial-angle distribution"), true);
  add_common(app.add_subcommand("norm-study", "norm deviation and path differences"), true);
  auto* dc = app.add_subcommand("dtcrit", "critical time step");
  add_common(dc, false);
  dc->add_option("--hk-ratio", dtcrit_args.hk_ratio, "Hk/Ms");
  dc->add_option("--happ", dtcrit_args.happ, "|h_app| (normalized)");
  dc->add_option("--is", dtcrit_args.is_mag, "|i_s| (normalized)");
  dc->add_option("--nu", dtcrit_args.nu, "thermal nu");

  CLI11_PARSE(app, argc, argv);

  try {
    kernels::force_isa(kernels::isa_from_name(common.kernel_isa));
    if (app.got_subcommand("simulate")) return cmd_simulate(common);
    if (app.got_subcommand("convergence")) return cmd_convergence(common);
    if (app.got_subcommand("weak-convergence")) return cmd_weak_convergence(common);
    if (app.got_subcommand("switchmap")) return cmd_switchmap(common);
    if (app.got_subcommand("delay-pdf")) return cmd_delay_pdf(common);
    if (app.got_subcommand("init-angle")) return cmd_init_angle(common);
    if (app.got_subcommand("norm-study")) return cmd_norm_study(common);
    if (app.got_subcommand("dtcrit")) return cmd_dtcrit(common, dtcrit_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver failure at step " << e.step_index << ": " << e.what() << " ("
              << e.iterations << " iterations)\n";
    return kExitSolver;
  } catch (const SingularityError& e) {
    std::cerr << "spherical singularity at step " << e.step_index << " (theta = " << e.theta
              << ")\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
