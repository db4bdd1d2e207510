// dystro-front: equilibrium/stability analysis, dispersion and minimal front
// speed, 1-D invasion simulations and parameter scans for the
// damage-driven muscle degeneration model. All outputs are data (CSV + JSON
// sidecars); plotting is left to whatever consumes them.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"
#include "dystro/front_tracker.hpp"
#include "dystro/io.hpp"
#include "dystro/linear_analysis.hpp"
#include "dystro/model.hpp"
#include "dystro/ode_solver.hpp"
#include "dystro/params.hpp"
#include "dystro/pde_solver.hpp"
#include "dystro/scan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "dystro-front 1.0.0";

struct GlobalOpts {
  std::string config;
  std::string out;
  std::size_t threads = 1;
  std::uint64_t seed = 0;  // reserved for randomized test tooling
};

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
  if (!j.is_object())
    throw dystro::DomainError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* name : allowed)
      if (key == name) {
        ok = true;
        break;
      }
    if (!ok) throw dystro::DomainError(what + ": unknown key '" + key + "'");
  }
}

json require_config(const GlobalOpts& g) {
  if (g.config.empty())
    throw dystro::DomainError("missing --config <json>");
  return dystro::read_json_file(g.config);
}

// Top-level configs embed the parameter set under "params"; the analysis
// subcommands accept a bare parameter object as well.
dystro::DimensionlessParams params_of(const json& j) {
  if (j.is_object() && j.contains("params"))
    return dystro::params_from_json(j.at("params"));
  return dystro::params_from_json(j);
}

dystro::Grid1D grid_from_json(const json& j) {
  check_keys(j, {"L", "n"}, "grid");
  dystro::Grid1D grid;
  grid.L = j.at("L").get<double>();
  grid.n = j.at("n").get<std::size_t>();
  grid.validate();
  return grid;
}

json grid_to_json(const dystro::Grid1D& grid) {
  return json{{"L", grid.L}, {"n", grid.n}};
}

dystro::InitialCondition ic_from_json(const json& j) {
  check_keys(j, {"kind", "amplitude", "center", "width", "gamma"},
             "initial condition");
  dystro::InitialCondition ic;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    ic.kind = dystro::IcKind::LocalizedGaussian;
  } else if (kind == "exponential") {
    ic.kind = dystro::IcKind::ExponentialDecay;
    ic.amplitude = 0.1;  // default for tail-controlled fronts
  } else if (kind == "uniform_healthy") {
    ic.kind = dystro::IcKind::UniformHealthy;
  } else {
    throw dystro::DomainError("initial condition: unknown kind '" + kind +
                              "'");
  }
  if (j.contains("amplitude")) ic.amplitude = j.at("amplitude").get<double>();
  if (j.contains("center")) ic.center = j.at("center").get<double>();
  if (j.contains("width")) ic.width = j.at("width").get<double>();
  if (j.contains("gamma")) ic.gamma = j.at("gamma").get<double>();
  return ic;
}

json ic_to_json(const dystro::InitialCondition& ic) {
  json j;
  switch (ic.kind) {
    case dystro::IcKind::LocalizedGaussian:
      j["kind"] = "gaussian";
      j["amplitude"] = ic.amplitude;
      j["center"] = ic.center;
      j["width"] = ic.width;
      break;
    case dystro::IcKind::ExponentialDecay:
      j["kind"] = "exponential";
      j["amplitude"] = ic.amplitude;
      j["gamma"] = ic.gamma;
      break;
    case dystro::IcKind::UniformHealthy:
      j["kind"] = "uniform_healthy";
      break;
  }
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    dystro::write_text_file(out_path, text);
}

int cmd_equilibria(const GlobalOpts& g) {
  const auto p = params_of(require_config(g));
  const auto report = dystro::equilibrium_report(p);
  emit(dystro::report_to_json(report).dump(2) + "\n", g.out);
  return 0;
}

int cmd_dispersion(const GlobalOpts& g, std::size_t n_points) {
  const auto p = params_of(require_config(g));
  const auto curve = dystro::dispersion_curve(p, n_points);
  std::ostringstream csv;
  csv << "gamma,s_plus\n";
  for (std::size_t i = 0; i < curve.gamma_grid.size(); ++i)
    csv << dystro::format_double(curve.gamma_grid[i]) << ','
        << dystro::format_double(curve.s_plus[i]) << '\n';
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  dystro::write_text_file(dir / "dispersion.csv", csv.str());
  dystro::write_json_file(dir / "dispersion.json",
                          json{{"gamma_cutoff", curve.gamma_cutoff},
                               {"gamma_star", curve.gamma_star},
                               {"s_star", curve.s_star}});
  std::cerr << "wrote " << (dir / "dispersion.csv").string() << " and "
            << (dir / "dispersion.json").string() << "\n";
  return 0;
}

dystro::AxisSpec parse_sweep_spec(const std::string& spec) {
  // name=lo:hi:n
  const auto eq = spec.find('=');
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos ||
      c2 == std::string::npos || !(eq < c1 && c1 < c2))
    throw dystro::DomainError("bad sweep spec '" + spec +
                              "', expected name=lo:hi:n");
  dystro::AxisSpec axis;
  axis.name = spec.substr(0, eq);
  axis.lo = std::stod(spec.substr(eq + 1, c1 - eq - 1));
  axis.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  axis.n = std::stoul(spec.substr(c2 + 1));
  axis.validate();
  return axis;
}

int cmd_speed(const GlobalOpts& g, const std::string& sweep_spec,
              bool with_simulation, const dystro::SimulationSetup& sim) {
  const json cfg = require_config(g);
  dystro::ScanConfig scan;
  scan.base = params_of(cfg);
  scan.task = dystro::ScanTask::SpeedSweep;
  scan.axis1 = parse_sweep_spec(sweep_spec);
  const auto rows = dystro::speed_sweep(scan, with_simulation, sim, g.threads);
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  const fs::path path = dir / "speed_sweep.csv";
  dystro::write_text_file(path, dystro::speed_sweep_csv(rows, with_simulation));
  std::cerr << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_simulate_ode(const GlobalOpts& g) {
  const json cfg = require_config(g);
  check_keys(cfg, {"params", "ic", "t_end", "rtol", "atol", "n_out"},
             "simulate-ode config");
  const auto p = dystro::params_from_json(cfg.at("params"));

  dystro::State u0 = dystro::healthy_equilibrium(p);
  bool default_ic = true;
  if (cfg.contains("ic")) {
    check_keys(cfg.at("ic"), {"h", "d", "m", "c"}, "ode initial condition");
    u0.h = cfg.at("ic").at("h").get<double>();
    u0.d = cfg.at("ic").at("d").get<double>();
    u0.m = cfg.at("ic").at("m").get<double>();
    u0.c = cfg.at("ic").at("c").get<double>();
    default_ic = false;
  } else {
    u0.d = 1e-3;  // default probe: small damage perturbation of the healthy state
  }

  const double t_end = cfg.value("t_end", 50.0);
  dystro::IntegrateOptions opts;
  opts.rtol = cfg.value("rtol", opts.rtol);
  opts.atol = cfg.value("atol", opts.atol);
  opts.n_out = cfg.value("n_out", opts.n_out);

  const auto traj = dystro::integrate(u0, p, t_end, opts);

  std::ostringstream csv;
  csv << "t,h,d,m,c\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& u = traj.states[i];
    csv << dystro::format_double(traj.times[i]) << ','
        << dystro::format_double(u.h) << ',' << dystro::format_double(u.d)
        << ',' << dystro::format_double(u.m) << ','
        << dystro::format_double(u.c) << '\n';
  }

  const json meta{{"params", dystro::params_to_json(p)},
                  {"ic", {{"h", u0.h}, {"d", u0.d}, {"m", u0.m}, {"c", u0.c}}},
                  {"ic_is_default", default_ic},
                  {"t_end", t_end},
                  {"rtol", opts.rtol},
                  {"atol", opts.atol},
                  {"n_out", opts.n_out},
                  {"invariant_violations", traj.invariant_violations.size()},
                  {"version", kVersion}};
  if (g.out.empty()) {
    std::cout << csv.str();
    std::cerr << meta.dump() << "\n";
  } else {
    dystro::write_text_file(g.out, csv.str());
    dystro::write_json_file(fs::path(g.out).string() + ".meta.json", meta);
  }
  return 0;
}

std::string snapshot_csv(const dystro::Field1D& f) {
  std::ostringstream csv;
  csv << "x,h,d,m,c\n";
  for (std::size_t i = 0; i < f.grid.n; ++i)
    csv << dystro::format_double(f.grid.x_center(i)) << ','
        << dystro::format_double(f.h[i]) << ',' << dystro::format_double(f.d[i])
        << ',' << dystro::format_double(f.m[i]) << ','
        << dystro::format_double(f.c[i]) << '\n';
  return csv.str();
}

int cmd_simulate_pde(const GlobalOpts& g) {
  const json cfg = require_config(g);
  check_keys(cfg, {"params", "grid", "ic", "t_end", "snapshots", "cfl_safety"},
             "simulate-pde config");
  if (g.out.empty())
    throw dystro::DomainError("simulate-pde: --out <run-dir> is required");
  const auto p = dystro::params_from_json(cfg.at("params"));
  const auto grid = grid_from_json(cfg.at("grid"));
  const auto ic = ic_from_json(cfg.at("ic"));
  const double t_end = cfg.at("t_end").get<double>();
  dystro::SimulateOptions opts;
  opts.n_snapshots = cfg.value("snapshots", opts.n_snapshots);
  opts.cfl_safety = cfg.value("cfl_safety", opts.cfl_safety);

  const auto run = dystro::simulate(ic, grid, p, t_end, opts);

  const fs::path dir(g.out);
  json snapshot_index = json::array();
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%04zu.csv", k);
    dystro::write_text_file(dir / name, snapshot_csv(run.snapshots[k].field));
    snapshot_index.push_back(
        {{"file", name}, {"time", run.snapshots[k].time}});
  }
  json violations = json::array();
  for (const auto& v : run.invariant_violations)
    violations.push_back({{"time", v.time},
                          {"field", std::string(1, v.field)},
                          {"magnitude", v.magnitude}});
  const json meta{{"params", dystro::params_to_json(p)},
                  {"grid", grid_to_json(grid)},
                  {"ic", ic_to_json(ic)},
                  {"t_end", t_end},
                  {"snapshots", opts.n_snapshots},
                  {"cfl_safety", opts.cfl_safety},
                  {"dt_summary",
                   {{"n_steps", run.n_steps},
                    {"dt_min", run.dt_min},
                    {"dt_max", run.dt_max},
                    {"dt_mean", run.dt_mean}}},
                  {"invariant_violations", violations},
                  {"snapshot_files", snapshot_index},
                  {"version", kVersion}};
  dystro::write_json_file(dir / "run.json", meta);
  std::cerr << "wrote " << run.snapshots.size() << " snapshots to "
            << dir.string() << "\n";
  return 0;
}

dystro::Field1D read_snapshot_csv(const fs::path& path,
                                  const dystro::Grid1D& grid) {
  std::ifstream in(path);
  if (!in.is_open())
    throw dystro::DomainError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,h,d,m,c")
    throw dystro::DomainError("bad snapshot header in " + path.string());
  dystro::Field1D f = dystro::Field1D::uniform(grid, {});
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= grid.n)
      throw dystro::DomainError("snapshot longer than grid in " +
                                path.string());
    std::istringstream row(line);
    std::string tok;
    double vals[5];
    for (int q = 0; q < 5; ++q) {
      if (!std::getline(row, tok, ','))
        throw dystro::DomainError("short row in " + path.string());
      vals[q] = std::stod(tok);
    }
    f.h[i] = vals[1];
    f.d[i] = vals[2];
    f.m[i] = vals[3];
    f.c[i] = vals[4];
    ++i;
  }
  if (i != grid.n)
    throw dystro::DomainError("snapshot shorter than grid in " +
                              path.string());
  return f;
}

int cmd_speed_from_run(const GlobalOpts& g, const std::string& run_dir) {
  const fs::path dir(run_dir);
  const json meta = dystro::read_json_file(dir / "run.json");
  const auto p = dystro::params_from_json(meta.at("params"));
  const auto grid = grid_from_json(meta.at("grid"));

  std::vector<dystro::Snapshot> snapshots;
  for (const auto& entry : meta.at("snapshot_files")) {
    dystro::Snapshot snap;
    snap.time = entry.at("time").get<double>();
    snap.field =
        read_snapshot_csv(dir / entry.at("file").get<std::string>(), grid);
    snapshots.push_back(std::move(snap));
  }

  double margin = 0.0;
  try {
    margin = 20.0 / dystro::min_speed(p).gamma_star;
  } catch (const dystro::DomainError&) {
  } catch (const dystro::NumericalError&) {
  }
  const double level = dystro::default_front_level(p);
  auto trace = dystro::trace_front(snapshots, level);
  const double speed = dystro::fit_speed(trace, grid.L, margin);

  std::ostringstream front_csv;
  front_csv << "t,x_front\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    front_csv << dystro::format_double(trace.times[i]) << ','
              << dystro::format_double(trace.positions[i]) << '\n';
  dystro::write_text_file(dir / "front.csv", front_csv.str());
  dystro::write_json_file(
      dir / "speed.json",
      json{{"fitted_speed", speed},
           {"r_squared", trace.r_squared},
           {"level", level},
           {"fit_window", {trace.fit_window.first, trace.fit_window.second}}});
  std::cerr << "fitted_speed = " << dystro::format_double(speed) << "\n";
  return 0;
}

dystro::AxisSpec axis_from_json(const json& j, const char* what) {
  check_keys(j, {"name", "lo", "hi", "n"}, what);
  dystro::AxisSpec axis;
  axis.name = j.at("name").get<std::string>();
  axis.lo = j.at("lo").get<double>();
  axis.hi = j.at("hi").get<double>();
  axis.n = j.at("n").get<std::size_t>();
  axis.validate();
  return axis;
}

int cmd_scan(const GlobalOpts& g) {
  const json cfg = require_config(g);
  check_keys(cfg,
             {"params", "task", "axis1", "axis2", "with_simulation", "n_gamma",
              "grid", "t_end", "snapshots", "cfl_safety"},
             "scan config");
  dystro::ScanConfig scan;
  scan.base = dystro::params_from_json(cfg.at("params"));
  const std::string task = cfg.at("task").get<std::string>();

  dystro::SimulationSetup sim;
  if (cfg.contains("grid")) sim.grid = grid_from_json(cfg.at("grid"));
  sim.t_end = cfg.value("t_end", 0.0);
  sim.n_snapshots = cfg.value("snapshots", sim.n_snapshots);
  sim.cfl_safety = cfg.value("cfl_safety", sim.cfl_safety);

  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::path path;
  std::string csv;
  if (task == "regime_map") {
    scan.task = dystro::ScanTask::RegimeMap;
    scan.axis1 = axis_from_json(cfg.at("axis1"), "axis1");
    scan.axis2 = axis_from_json(cfg.at("axis2"), "axis2");
    csv = dystro::regime_map_csv(dystro::regime_map(scan, g.threads));
    path = dir / "regime_map.csv";
  } else if (task == "speed_sweep") {
    scan.task = dystro::ScanTask::SpeedSweep;
    scan.axis1 = axis_from_json(cfg.at("axis1"), "axis1");
    const bool with_sim = cfg.value("with_simulation", false);
    csv = dystro::speed_sweep_csv(
        dystro::speed_sweep(scan, with_sim, sim, g.threads), with_sim);
    path = dir / "speed_sweep.csv";
  } else if (task == "dispersion_study") {
    const std::size_t n_gamma = cfg.value("n_gamma", std::size_t{16});
    csv = dystro::dispersion_study_csv(
        dystro::dispersion_study(scan.base, n_gamma, sim, g.threads));
    path = dir / "dispersion_study.csv";
  } else {
    throw dystro::DomainError("scan: unknown task '" + task + "'");
  }
  dystro::write_text_file(path, csv);
  std::cerr << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  CLI::App app{std::string(kVersion) +
               " - invasion analysis toolkit for the damage-driven "
               "reaction-diffusion-chemotaxis model"};
  app.require_subcommand(1);
  app.add_option("--config", g.config, "JSON config / parameter file");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--threads", g.threads, "worker threads for scans");
  app.add_option("--seed", g.seed,
                 "RNG seed (reserved for randomized test tooling)");

  auto* sc_eq = app.add_subcommand(
      "equilibria", "equilibrium report (healthy, Theta, R_d, pathological)");
  std::size_t dispersion_points = 512;
  auto* sc_disp = app.add_subcommand(
      "dispersion", "sample the positive speed branch s_plus(gamma)");
  sc_disp->add_option("--points", dispersion_points, "grid points");
  std::string sweep_spec;
  bool with_simulation = false;
  dystro::SimulationSetup speed_sim;
  auto* sc_speed = app.add_subcommand(
      "speed", "minimal front speed, optionally swept over a parameter");
  sc_speed->add_option("--sweep", sweep_spec, "name=lo:hi:n")->required();
  sc_speed->add_flag("--with-simulation", with_simulation,
                     "also measure the PDE front speed per point");
  sc_speed->add_option("--grid-L", speed_sim.grid.L, "domain length");
  sc_speed->add_option("--grid-n", speed_sim.grid.n, "cells");
  sc_speed->add_option("--t-end", speed_sim.t_end,
                       "simulation length (default: sized from prediction)");
  auto* sc_ode = app.add_subcommand("simulate-ode",
                                    "integrate the homogeneous reaction system");
  auto* sc_pde = app.add_subcommand(
      "simulate-pde", "run the 1-D IMEX solver, writing a run directory");
  std::string run_dir;
  auto* sc_sfr = app.add_subcommand(
      "speed-from-run", "fit the front speed from a simulate-pde run directory");
  sc_sfr->add_option("run_dir", run_dir, "run directory")->required();
  auto* sc_scan = app.add_subcommand(
      "scan", "parameter-plane scans: regime_map, speed_sweep, dispersion_study");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_eq->parsed()) return cmd_equilibria(g);
    if (sc_disp->parsed()) return cmd_dispersion(g, dispersion_points);
    if (sc_speed->parsed())
      return cmd_speed(g, sweep_spec, with_simulation, speed_sim);
    if (sc_ode->parsed()) return cmd_simulate_ode(g);
    if (sc_pde->parsed()) return cmd_simulate_pde(g);
    if (sc_sfr->parsed()) return cmd_speed_from_run(g, run_dir);
    if (sc_scan->parsed()) return cmd_scan(g);
  } catch (const dystro::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad config: " << e.what() << "\n";
    return 2;
  } catch (const dystro::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
