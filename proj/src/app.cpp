#include "gch/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gch::app {

namespace {

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t hash = 1469598103934665603ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ULL;
    }
    if (!in) break;
  }
  return hash;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct ManifestBuilder {
  json j;
  std::vector<std::string> files;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void add(const std::string& path) { files.push_back(path); }

  void finish(const std::string& path, bool passed) {
    json outputs = json::array();
    for (const std::string& f : files) {
      char hex[32];
      std::snprintf(hex, sizeof hex, "%016llx",
                    static_cast<unsigned long long>(fnv1a64_file(f)));
      outputs.push_back({{"path", f}, {"fnv1a64", hex}});
    }
    j["outputs"] = outputs;
    j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    j["passed"] = passed;
    write_text(path, j.dump(2) + "\n");
  }
};

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  return fallback;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("grid"))
      cfg.grid = Grid(get_or(j["grid"], "L", 40.0), get_or(j["grid"], "N", 2048));
    if (j.contains("ic")) {
      const json& ic = j["ic"];
      cfg.ic_kind = get_or<std::string>(ic, "kind", "peakon");
      const json params = ic.contains("params") ? ic["params"] : json::object();
      cfg.ic_c = get_or(params, "c", 1.0);
      cfg.ic_x0 = get_or(params, "x0", 0.0);
      cfg.ic_a = get_or(params, "a", 1.0);
      cfg.ic_s = get_or(params, "s", 1.0);
      cfg.ic_value = get_or(params, "value", 0.0);
      cfg.ic_path = get_or<std::string>(params, "path", "");
    }
    if (j.contains("mollify")) {
      const json& m = j["mollify"];
      if (m.contains("width") && m["width"].is_number()) {
        cfg.mollify_coupled = false;
        cfg.mollify_width = m["width"].get<double>();
      }
      cfg.mollify_floor_cells = get_or(m, "floor_cells", 4.0);
    }
    if (j.contains("solver")) {
      const json& s = j["solver"];
      cfg.solver.epsilon = get_or(s, "epsilon", 0.01);
      cfg.solver.t_final = get_or(s, "t_final", 1.0);
      cfg.solver.cfl = get_or(s, "cfl", 0.4);
      cfg.solver.dt_max = get_or(s, "dt_max", 0.05);
      cfg.solver.snapshot_stride = get_or(s, "snapshot_stride", 10);
      cfg.solver.blowup_ceiling = get_or(s, "blowup_ceiling", 1e6);
      cfg.snapshot_count = get_or(s, "snapshot_count", 0);
      const std::string form = get_or<std::string>(s, "formulation", "u");
      if (form == "u")
        cfg.solver.formulation = Formulation::U_FORM;
      else if (form == "w")
        cfg.solver.formulation = Formulation::W_FORM;
      else
        throw ConfigError("solver.formulation must be \"u\" or \"w\"");
    }
    if (j.contains("checks")) {
      const json& c = j["checks"];
      if (c.contains("enabled"))
        cfg.checks_enabled = c["enabled"].get<std::vector<std::string>>();
      cfg.check_tolerance = get_or(c, "tolerance", 1e-6);
    }
    if (j.contains("entropy")) {
      const json& e = j["entropy"];
      cfg.entropy_seed = get_or(e, "seed", 42u);
      cfg.entropy_bumps = get_or(e, "bumps", 12);
      if (e.contains("kruzkov_k"))
        cfg.kruzkov_k = e["kruzkov_k"].get<std::vector<double>>();
      cfg.kruzkov_delta = get_or(e, "delta", 1e-3);
      cfg.paper_literal = get_or(e, "paper_literal", false);
    }
    if (j.contains("sweep")) {
      const json& s = j["sweep"];
      if (s.contains("epsilons"))
        cfg.sweep_epsilons = s["epsilons"].get<std::vector<double>>();
      cfg.sweep_snapshot_count = get_or(s, "snapshot_count", 40);
      if (s.contains("window")) {
        const json& w = s["window"];
        cfg.sweep_window.x_lo = get_or(w, "x_lo", -10.0);
        cfg.sweep_window.x_hi = get_or(w, "x_hi", 10.0);
        cfg.sweep_window.t_lo = get_or(w, "t_lo", 0.1);
        cfg.sweep_window.t_hi = get_or(w, "t_hi", cfg.solver.t_final);
      } else {
        cfg.sweep_window.t_hi = cfg.solver.t_final;
      }
    } else {
      cfg.sweep_window.t_hi = cfg.solver.t_final;
    }
  } catch (const json::exception& e) {
    throw ConfigError("config field error in " + path + ": " + e.what());
  }

  if (!(cfg.solver.epsilon > 0.0))
    throw ConfigError("viscosity must be positive");
  cfg.solver.validate();
  return cfg;
}

GridFunction build_initial_data(const ExperimentConfig& cfg) {
  if (cfg.ic_kind == "peakon")
    return ic_peakon(cfg.ic_c, cfg.ic_x0, cfg.grid);
  if (cfg.ic_kind == "gaussian")
    return ic_gaussian(cfg.ic_a, cfg.ic_s, cfg.grid);
  if (cfg.ic_kind == "constant")
    return GridFunction(cfg.grid, cfg.ic_value);
  if (cfg.ic_kind == "zero") return GridFunction(cfg.grid, 0.0);
  if (cfg.ic_kind == "csv") return ic_from_csv(cfg.ic_path, cfg.grid);
  throw ConfigError("unknown ic.kind: " + cfg.ic_kind);
}

double mollification_width(const ExperimentConfig& cfg, double epsilon) {
  const double floor = cfg.mollify_floor_cells * cfg.grid.spacing;
  if (cfg.mollify_coupled) return std::max(epsilon, floor);
  if (cfg.mollify_width <= 0.0) return 0.0;
  return std::max(cfg.mollify_width, floor);
}

void save_trajectory(const Trajectory& traj, const std::string& dir) {
  fs::create_directories(dir);
  json manifest;
  manifest["epsilon"] = traj.epsilon;
  manifest["grid"] = {{"L", traj.grid.length}, {"N", traj.grid.n}};
  manifest["times"] = traj.times;
  manifest["dissipation"] = traj.dissipation;
  json snaps = json::array();
  for (int k = 0; k < traj.count(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "snap_%05d.csv", k);
    write_csv(traj.snapshots[k], dir + "/" + name);
    snaps.push_back(name);
  }
  manifest["snapshots"] = snaps;
  json stats = json::array();
  for (const StepStats& s : traj.stats)
    stats.push_back({{"t", s.t},
                     {"dt", s.dt_used},
                     {"advective_cfl", s.advective_cfl},
                     {"diffusive_cfl", s.diffusive_cfl},
                     {"rhs_linf", s.rhs_linf}});
  manifest["stats"] = stats;
  write_text(dir + "/trajectory.json", manifest.dump(2) + "\n");
}

Trajectory load_trajectory(const std::string& dir) {
  std::ifstream in(dir + "/trajectory.json");
  if (!in) throw ConfigError("no trajectory.json in " + dir);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trajectory.json parse error: ") + e.what());
  }
  Trajectory traj;
  traj.grid = Grid(manifest.at("grid").at("L").get<double>(),
                   manifest.at("grid").at("N").get<int>());
  traj.epsilon = manifest.at("epsilon").get<double>();
  traj.times = manifest.at("times").get<std::vector<double>>();
  if (manifest.contains("dissipation"))
    traj.dissipation = manifest["dissipation"].get<std::vector<double>>();
  for (const auto& name : manifest.at("snapshots"))
    traj.snapshots.push_back(
        ic_from_csv(dir + "/" + name.get<std::string>(), traj.grid));
  traj.validate();
  return traj;
}

namespace {

struct CheckOutcome {
  bool all_passed = true;
  std::vector<BoundReport> reports;
};

bool enabled(const ExperimentConfig& cfg, const std::string& name) {
  for (const std::string& s : cfg.checks_enabled)
    if (s == name) return true;
  return false;
}

CheckOutcome run_bound_checks(const ExperimentConfig& cfg, Trajectory& traj,
                              const InitialNorms& n0) {
  CheckOutcome out;
  const double tol = cfg.check_tolerance;
  if (enabled(cfg, "h1")) out.reports.push_back(check_h1(traj, tol));
  if (enabled(cfg, "l1")) out.reports.push_back(check_l1(traj, n0, tol));
  if (enabled(cfg, "bv")) out.reports.push_back(check_bv(traj, n0, tol));
  if (enabled(cfg, "linf")) out.reports.push_back(check_linf(traj, n0, tol));
  if (enabled(cfg, "time_bv"))
    out.reports.push_back(check_time_bv(traj, n0, tol));
  if (enabled(cfg, "p_bounds"))
    for (BoundReport& r : check_p_bounds(traj, n0, tol))
      out.reports.push_back(std::move(r));
  for (const BoundReport& r : out.reports)
    out.all_passed = out.all_passed && r.passed;
  return out;
}

std::vector<EntropyPair> entropy_pairs(const ExperimentConfig& cfg) {
  std::vector<EntropyPair> pairs;
  pairs.push_back(pair_quadratic());
  for (double k : cfg.kruzkov_k)
    pairs.push_back(pair_kruzkov_smooth(k, cfg.kruzkov_delta));
  return pairs;
}

CertificationReport run_entropy_check(const ExperimentConfig& cfg,
                                      Trajectory& traj, unsigned seed,
                                      bool paper_literal) {
  const std::vector<TestFunction> phis = make_random_bumps(
      traj.times.back(), traj.grid.length, cfg.entropy_bumps, seed);
  return certify(traj, entropy_pairs(cfg), phis, cfg.check_tolerance,
                 paper_literal);
}

void emit_reports(const std::vector<BoundReport>& reports,
                  const std::string& dir, ManifestBuilder& mb) {
  for (const BoundReport& r : reports) {
    const std::string base = dir + "/bound_" + r.bound_name;
    write_text(base + ".json", bound_report_json(r) + "\n");
    write_text(base + ".csv", bound_report_csv(r));
    mb.add(base + ".json");
    mb.add(base + ".csv");
    std::cout << (r.passed ? "pass " : "FAIL ") << r.bound_name << "\n";
  }
}

}  // namespace

int cmd_run(const Options& opt) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opt.config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  fs::create_directories(opt.out_dir);
  ManifestBuilder mb;
  mb.j["command"] = "run";
  mb.j["config_path"] = opt.config_path;
  {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64_file(opt.config_path)));
    mb.j["input_hash"] = hex;
  }

  bool passed = true;
  try {
    const GridFunction u0 = build_initial_data(cfg);
    const InitialNorms n0 = initial_norms(u0);
    const double width = mollification_width(cfg, cfg.solver.epsilon);
    GridFunction u0_run = u0;
    if (width > 0.0)
      u0_run = mollify(u0, mollifier_kernel(width, cfg.grid));

    SolverConfig sc = cfg.solver;
    if (cfg.snapshot_count > 0) {
      sc.output_times.clear();
      for (int k = 1; k <= cfg.snapshot_count; ++k)
        sc.output_times.push_back(sc.t_final * k / cfg.snapshot_count);
    }

    Trajectory traj = run(u0_run, sc);
    save_trajectory(traj, opt.out_dir + "/trajectory");
    mb.add(opt.out_dir + "/trajectory/trajectory.json");

    const CheckOutcome checks = run_bound_checks(cfg, traj, n0);
    emit_reports(checks.reports, opt.out_dir, mb);
    passed = passed && checks.all_passed;

    if (enabled(cfg, "entropy")) {
      const unsigned seed = opt.seed_override >= 0
                                ? static_cast<unsigned>(opt.seed_override)
                                : cfg.entropy_seed;
      const CertificationReport cert = run_entropy_check(
          cfg, traj, seed, cfg.paper_literal || opt.paper_literal);
      write_text(opt.out_dir + "/certification.json",
                 certification_report_json(cert) + "\n");
      mb.add(opt.out_dir + "/certification.json");
      std::cout << (cert.passed ? "pass " : "FAIL ") << "entropy\n";
      passed = passed && cert.passed;
    }
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    mb.finish(opt.out_dir + "/manifest.json", false);
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  mb.finish(opt.out_dir + "/manifest.json", passed);
  return passed ? kExitOk : kExitCheckFailure;
}

int cmd_sweep(const Options& opt) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opt.config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  fs::create_directories(opt.out_dir);
  ManifestBuilder mb;
  mb.j["command"] = "sweep";
  mb.j["config_path"] = opt.config_path;

  try {
    SweepConfig sw;
    sw.epsilons = cfg.sweep_epsilons;
    sw.base = cfg.solver;
    sw.window = cfg.sweep_window;
    sw.snapshot_count = cfg.sweep_snapshot_count;
    sw.mollify_width_floor_cells = cfg.mollify_floor_cells;
    if (const char* env = std::getenv("GCH_THREADS"))
      sw.threads = std::atoi(env);

    const GridFunction u0 = build_initial_data(cfg);
    const InitialNorms n0 = initial_norms(u0);
    const SweepReport report = run_sweep(u0, sw);
    if (report.aborted) {
      std::cerr << "sweep aborted: " << report.abort_reason << "\n";
      mb.finish(opt.out_dir + "/manifest.json", false);
      return kExitBlowUp;
    }

    const std::vector<CauchyRow> table = cauchy_table(report);
    write_text(opt.out_dir + "/cauchy.csv", cauchy_table_csv(table));
    mb.add(opt.out_dir + "/cauchy.csv");
    std::cout << (report.cauchy_monotone ? "pass " : "FAIL ")
              << "cauchy_monotone\n";

    bool passed = report.cauchy_monotone;
    Trajectory smallest = report.trajectories.back();
    save_trajectory(smallest, opt.out_dir + "/trajectory_smallest_eps");
    mb.add(opt.out_dir + "/trajectory_smallest_eps/trajectory.json");

    const CheckOutcome checks = run_bound_checks(cfg, smallest, n0);
    emit_reports(checks.reports, opt.out_dir, mb);
    passed = passed && checks.all_passed;
    if (enabled(cfg, "entropy")) {
      const unsigned seed = opt.seed_override >= 0
                                ? static_cast<unsigned>(opt.seed_override)
                                : cfg.entropy_seed;
      const CertificationReport cert = run_entropy_check(
          cfg, smallest, seed, cfg.paper_literal || opt.paper_literal);
      write_text(opt.out_dir + "/certification.json",
                 certification_report_json(cert) + "\n");
      mb.add(opt.out_dir + "/certification.json");
      std::cout << (cert.passed ? "pass " : "FAIL ") << "entropy\n";
      passed = passed && cert.passed;
    }
    mb.finish(opt.out_dir + "/manifest.json", passed);
    return passed ? kExitOk : kExitCheckFailure;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_certify(const Options& opt) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opt.config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    Trajectory traj = load_trajectory(opt.trajectory_dir);
    fs::create_directories(opt.out_dir);
    const unsigned seed = opt.seed_override >= 0
                              ? static_cast<unsigned>(opt.seed_override)
                              : cfg.entropy_seed;
    const CertificationReport cert = run_entropy_check(
        cfg, traj, seed, cfg.paper_literal || opt.paper_literal);
    write_text(opt.out_dir + "/certification.json",
               certification_report_json(cert) + "\n");
    std::cout << (cert.passed ? "pass " : "FAIL ") << "entropy\n";
    return cert.passed ? kExitOk : kExitCheckFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

namespace {

struct SelfTest {
  int failures = 0;
  void check(bool ok, const std::string& name) {
    std::cout << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  }
  void near(double a, double b, double tol, const std::string& name) {
    check(std::abs(a - b) <= tol, name);
  }
};

}  // namespace

int cmd_selftest() {
  SelfTest t;
  const Grid grid(40.0, 256);
  const HelmholtzSolver helm(grid);
  const GridFunction zero(grid, 0.0);
  const GridFunction three(grid, 3.0);

  t.near(norm_linf(derivative(three)), 0.0, 0.0, "derivative of constant");
  t.near(norm_l1(zero) + norm_l2(zero) + norm_linf(zero), 0.0, 0.0,
         "norms of zero field");
  {
    std::vector<double> v(grid.n, 0.0);
    v[7] = 1.0 / grid.spacing;
    t.near(norm_l1(GridFunction(grid, std::move(v))), 1.0, 1e-14,
           "discrete delta L1 normalization");
  }
  t.near(norm_h1(three), 3.0 * std::sqrt(grid.length), 1e-12,
         "H1 of a constant");
  t.near(seminorm_bv(three), 0.0, 0.0, "BV of a constant");
  {
    std::vector<double> v(grid.n, 0.0);
    v[10] = 2.5;
    t.near(seminorm_bv(GridFunction(grid, std::move(v))), 5.0, 1e-14,
           "BV of an up-down spike");
  }
  t.near(norm_linf(lin_comb(1.0, helm.green_convolve(GridFunction(grid, 1.0)),
                            -1.0, GridFunction(grid, 1.0))),
         0.0, 1e-12, "Helmholtz fixes constants");
  t.near(norm_linf(helm.green_dx(GridFunction(grid, 2.0))), 0.0, 1e-12,
         "green_dx of a constant");
  t.near(norm_linf(helm.green_dxx(GridFunction(grid, 1.0))), 0.0, 1e-12,
         "green_dxx of a constant");
  {
    const GridFunction f =
        GridFunction::sample(grid, [&](double x) { return std::sin(0.3 * x) + 0.2 * std::cos(x); });
    const GridFunction a = helm.green_dx(f);
    const GridFunction b = derivative(helm.green_convolve(f));
    t.near(norm_linf(lin_comb(1.0, a, -1.0, b)), 0.0, 1e-10,
           "green_dx commutes with the derivative");
  }
  {
    const MollifierKernel k = mollifier_kernel(1.0, grid);
    double s = 0.0;
    for (double w : k.weights) s += w;
    t.near(s, 1.0, 1e-14, "mollifier kernel has unit mass");
    t.near(bump_profile(0.0), std::exp(-1.0), 1e-15,
           "bump profile value at the origin");
    t.near(norm_linf(lin_comb(1.0, mollify(three, k), -1.0, three)), 0.0,
           1e-13, "mollifying a constant");
  }
  t.near(ic_peakon(1.0, 0.0, grid)[grid.n / 2], 1.0, 0.0,
         "peakon crest value");
  t.near(norm_linf(ic_gaussian(0.0, 1.0, grid)), 0.0, 0.0,
         "zero-amplitude gaussian");
  {
    const std::string path = "selftest_roundtrip.csv";
    const GridFunction f =
        GridFunction::sample(grid, [](double x) { return std::sin(x) / 3.0; });
    write_csv(f, path);
    const GridFunction g = ic_from_csv(path, grid);
    bool same = true;
    for (int i = 0; i < grid.n; ++i) same = same && f[i] == g[i];
    t.check(same, "CSV round-trip is bit identical");
    fs::remove(path);
  }
  {
    const GridFunction c(grid, 0.7);
    t.near(norm_linf(lin_comb(1.0, compute_p1(c, helm), -1.0,
                              GridFunction(grid, 6.0 * 0.49))),
           0.0, 1e-11, "P1 of a constant");
    t.near(norm_linf(compute_p2(c, helm)), 0.0, 1e-12, "P2 of a constant");
    t.near(norm_linf(rhs(c, 0.01, helm)), 0.0, 1e-10,
           "constants are steady states");
    t.near(norm_linf(rhs(zero, 0.01, helm)), 0.0, 0.0, "zero is steady");
    t.near(norm_linf(rhs_w(c, 0.01, helm)), 0.0, 1e-10,
           "w-form constant steady state");
  }
  {
    SolverConfig sc;
    sc.epsilon = 0.05;
    sc.dt_max = 1.0;
    t.near(stable_dt(zero, sc),
           sc.cfl * grid.spacing * grid.spacing / (2.0 * sc.epsilon), 1e-15,
           "pure-diffusion step limit");
    SolverConfig big = sc;
    big.epsilon = 5.0;
    t.check(stable_dt(zero, big) < stable_dt(zero, sc),
            "larger viscosity shrinks the step");
    const GridFunction c(grid, 0.4);
    t.near(norm_linf(lin_comb(1.0, step_ssprk3(c, 1e-3, 0.02, helm), -1.0, c)),
           0.0, 1e-13, "steady state preserved by a step");
    t.near(norm_linf(lin_comb(1.0, step_ssprk3(c, 0.0, 0.02, helm), -1.0, c)),
           0.0, 0.0, "zero step is the identity");
  }
  {
    SolverConfig sc;
    sc.epsilon = 0.05;
    sc.t_final = 0.05;
    sc.dt_max = 0.002;
    sc.snapshot_stride = 1;
    Trajectory traj = run(zero, sc);
    double m = 0.0;
    for (const GridFunction& s : traj.snapshots) m = std::max(m, norm_linf(s));
    t.near(m, 0.0, 0.0, "zero data stays zero");
    Trajectory tc = run(GridFunction(grid, 0.3), sc);
    double dev = 0.0;
    for (const GridFunction& s : tc.snapshots)
      dev = std::max(dev, norm_linf(lin_comb(1.0, s, -1.0,
                                             GridFunction(grid, 0.3))));
    t.near(dev, 0.0, 1e-10, "constant data stays constant");

    const InitialNorms n0 = initial_norms(zero);
    t.check(check_h1(traj).passed && check_l1(traj, n0).passed &&
                check_bv(traj, n0).passed && check_linf(traj, n0).passed &&
                check_time_bv(traj, n0).passed,
            "bound suite on the zero trajectory");
    bool pb = true;
    for (const BoundReport& r : check_p_bounds(traj, n0)) pb = pb && r.passed;
    t.check(pb, "P bounds on the zero trajectory");
    t.near(blowup_functional(zero), 0.0, 0.0, "blow-up functional at zero");

    const EntropyPair quad = pair_quadratic();
    t.near(quad.flux(1.0), 1.0 / 3.0, 1e-15, "quadratic flux at 1");
    t.near(quad.flux(0.0), 0.0, 0.0, "quadratic flux at 0");
    t.near(quad.flux(-2.0), -8.0 / 3.0, 1e-14, "quadratic flux at -2");
    const EntropyPair kz = pair_kruzkov_smooth(0.5, 1e-3);
    t.near(kz.eta(0.5), 0.0, 0.0, "Kruzkov entropy vanishes at k");
    t.near(kz.flux(0.5), 0.0, 1e-12, "Kruzkov flux vanishes at k");

    TestFunction phi;
    phi.t_center = 0.025;
    phi.t_width = 0.02;
    phi.x_center = 0.0;
    phi.x_width = 5.0;
    t.near(weak_residual(traj, phi).raw, 0.0, 1e-14,
           "weak residual on the zero trajectory");
    t.near(entropy_residual(traj, quad, phi).raw, 0.0, 1e-14,
           "entropy residual on the zero trajectory");
    CertificationReport vac = certify(traj, {}, {phi});
    t.check(vac.passed && vac.vacuous, "empty pair list is a vacuous pass");
    CertificationReport full = certify(traj, {quad, kz}, {phi}, 1e-3);
    t.check(full.passed, "zero-trajectory certification");
  }
  {
    SweepConfig sw;
    sw.epsilons = {0.05, 0.05};
    sw.allow_duplicate_epsilons = true;
    sw.base.t_final = 0.05;
    sw.window = {-10.0, 10.0, 0.01, 0.05};
    sw.snapshot_count = 5;
    const GridFunction u0 = ic_peakon(0.25, 0.0, Grid(40.0, 256));
    const SweepReport rep = run_sweep(u0, sw);
    t.near(rep.d_u[0], 0.0, 1e-14, "duplicate-viscosity sweep difference");
    SweepConfig single = sw;
    single.epsilons = {0.05};
    single.allow_duplicate_epsilons = false;
    t.check(cauchy_table(run_sweep(u0, single)).empty(),
            "single-member sweep table is empty");
    const SweepReport zrep = run_sweep(GridFunction(Grid(40.0, 256), 0.0), sw);
    t.near(zrep.d_u[0] + zrep.d_q[0], 0.0, 1e-14,
           "zero-data sweep differences");
  }

  std::cout << (t.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return t.failures == 0 ? kExitOk : kExitCheckFailure;
}

}  // namespace gch::app
