// tubepot: radial Kahler-Einstein and Ricci-flat potentials on Grauert
// tubes. Subcommands solve the boundary blow-up problem by shooting, build
// the Ricci-flat potential by quadrature, run exhaustion-convergence and
// ball-family experiments, and post-process completeness/curvature
// diagnostics. Outputs are written atomically with a manifest alongside.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubepot/analysis.hpp"
#include "tubepot/ball_oracle.hpp"
#include "tubepot/errors.hpp"
#include "tubepot/reports.hpp"
#include "tubepot/validate.hpp"
#include "tubepot/version.hpp"

namespace fs = std::filesystem;
using namespace tubepot;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
  std::string space = "euclidean";
  int dim = 2;
  double lambda = 1.0;
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double hmax = 40.0;
  double radius_tol = 1e-6;
  int max_iters = 200;
  int grid_points = 201;
  std::string out;
  std::string format = "json";
  int jobs = 1;
};

SpaceSpec resolve_space(const std::string& token, int dim) {
  const auto fam = parse_family(token);
  if (!fam)
    throw CLI::ValidationError(
        "--space", "unknown space '" + token +
                       "' (expected euclidean, hyperbolic, sphere, rp, cp, "
                       "hp, cayley)");
  return SpaceSpec::make(*fam, dim);
}

ShootingConfig shooting_config(const CommonOpts& o) {
  ShootingConfig cfg;
  cfg.integrator.rel_tol = o.rel_tol;
  cfg.integrator.abs_tol = o.abs_tol;
  cfg.integrator.h_max_blowup = o.hmax;
  cfg.radius_tol = o.radius_tol;
  cfg.max_iters = o.max_iters;
  return cfg;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return xs;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string hex64(uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

fs::path resolve_out_path(const std::string& out) {
  fs::path p(out);
  if (p.is_relative() && !p.has_parent_path()) {
    if (const char* dir = std::getenv("TUBEPOT_OUT_DIR"); dir && *dir)
      p = fs::path(dir) / p;
  }
  return p;
}

// temp file in the target directory + rename, so readers never see a
// partial file
void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct Emitter {
  std::string command;
  std::string config_json;  // resolved option values
  std::vector<std::pair<fs::path, std::string>> outputs;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void add(const fs::path& path, std::string content) {
    outputs.emplace_back(path, std::move(content));
  }

  void commit() {
    for (const auto& [path, content] : outputs) write_atomic(path, content);
    if (outputs.empty()) return;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::string m = "{\n";
    m += "  \"tool\": \"tubepot\",\n";
    m += "  \"version\": \"" + std::string(kVersion) + "\",\n";
    m += "  \"command\": \"" + command + "\",\n";
    m += "  \"config\": " + config_json + ",\n";
    m += "  \"status\": \"ok\",\n";
    m += "  \"wall_seconds\": " + format_double(wall) + ",\n";
    m += "  \"outputs\": [";
    bool first = true;
    for (const auto& [path, content] : outputs) {
      if (!first) m += ",";
      first = false;
      m += "\n    {\"path\": \"" + path.filename().string() + "\", \"bytes\": " +
           std::to_string(content.size()) + ", \"fnv1a64\": \"" +
           hex64(fnv1a64(content)) + "\"}";
    }
    m += "\n  ]\n}\n";
    fs::path mpath = outputs.front().first;
    mpath += ".manifest.json";
    write_atomic(mpath, m);
  }
};

std::string kv(const std::string& key, const std::string& val, bool str = false) {
  return "\"" + key + "\": " + (str ? "\"" + val + "\"" : val);
}

int run_numeric(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const CLI::ValidationError&) {
    throw;  // handled by CLI11 exit path
  } catch (const std::domain_error& e) {
    std::cerr << "{\"error\": {\"type\": \"domain\", \"message\": \"" << e.what()
              << "\"}}\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\": {\"type\": \"usage\", \"message\": \"" << e.what()
              << "\"}}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"type\": \"numeric\", \"message\": \"" << e.what()
              << "\"}}\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial Kahler-Einstein / Ricci-flat potentials on Grauert tubes"};
  app.set_config("--config", "", "read default option values from a file");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("tubepot ") + kVersion);

  CommonOpts o;
  int exit_code = 0;

  auto add_space_opts = [&](CLI::App* cmd) {
    cmd->add_option("--space", o.space, "space family token")->capture_default_str();
    cmd->add_option("--dim", o.dim, "real dimension n of the center")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_solver_opts = [&](CLI::App* cmd) {
    cmd->add_option("--rel-tol", o.rel_tol, "integrator relative tolerance")
        ->capture_default_str();
    cmd->add_option("--abs-tol", o.abs_tol, "integrator absolute tolerance")
        ->capture_default_str();
    cmd->add_option("--hmax", o.hmax, "potential threshold declaring blow-up")
        ->capture_default_str();
    cmd->add_option("--tol", o.radius_tol, "shooting radius tolerance")
        ->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "bisection iteration budget")
        ->capture_default_str();
  };
  auto add_out_opts = [&](CLI::App* cmd, bool csv_allowed = true) {
    cmd->add_option("--out", o.out, "output file path")->required();
    if (csv_allowed)
      cmd->add_option("--format", o.format, "json or csv")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
  };

  // ---- solve ----
  double radius = 1.0;
  auto* solve_cmd = app.add_subcommand("solve",
      "solve the blow-up problem at one tube radius");
  add_space_opts(solve_cmd);
  solve_cmd->add_option("--lambda", o.lambda, "Einstein constant (> 0)")
      ->capture_default_str();
  solve_cmd->add_option("--radius", radius, "tube radius")->required();
  solve_cmd->add_option("--grid", o.grid_points, "uniform probe count")
      ->capture_default_str();
  add_solver_opts(solve_cmd);
  add_out_opts(solve_cmd);
  solve_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const SpaceSpec space = resolve_space(o.space, o.dim);
      const std::vector<double> probes =
          linspace(0.0, radius * (1.0 - 1e-9), o.grid_points);
      const PotentialSolution sol =
          solve_potential(space, o.lambda, radius, shooting_config(o), probes);
      Emitter em;
      em.command = "solve";
      em.config_json = "{" + kv("space", o.space, true) + ", " +
                       kv("dim", std::to_string(o.dim)) + ", " +
                       kv("lambda", format_double(o.lambda)) + ", " +
                       kv("radius", format_double(radius)) + ", " +
                       kv("grid", std::to_string(o.grid_points)) + ", " +
                       kv("hmax", format_double(o.hmax)) + ", " +
                       kv("tol", format_double(o.radius_tol)) + ", " +
                       kv("format", o.format, true) + "}";
      em.add(resolve_out_path(o.out),
             o.format == "csv" ? to_csv(sol.grid) : solution_to_json(sol));
      em.commit();
      std::cout << "a = " << format_double(sol.a)
                << ", achieved radius = " << format_double(sol.achieved_radius)
                << "\n";
    });
  });

  // ---- ricci-flat ----
  double t_max = 5.0;
  auto* flat_cmd = app.add_subcommand("ricci-flat",
      "Ricci-flat potential by direct quadrature");
  add_space_opts(flat_cmd);
  flat_cmd->add_option("--tmax", t_max, "grid extent")->required();
  flat_cmd->add_option("--grid", o.grid_points, "grid point count")
      ->capture_default_str();
  add_out_opts(flat_cmd);
  flat_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const SpaceSpec space = resolve_space(o.space, o.dim);
      const RicciFlatPotential K =
          ricci_flat_potential(space, t_max, o.grid_points);
      Emitter em;
      em.command = "ricci-flat";
      em.config_json = "{" + kv("space", o.space, true) + ", " +
                       kv("dim", std::to_string(o.dim)) + ", " +
                       kv("tmax", format_double(t_max)) + ", " +
                       kv("grid", std::to_string(o.grid_points)) + ", " +
                       kv("format", o.format, true) + "}";
      em.add(resolve_out_path(o.out),
             o.format == "csv" ? to_csv(K.grid) : ricci_flat_to_json(K));
      em.commit();
    });
  });

  // ---- exhaust ----
  std::vector<double> radii;
  double window = 1.0;
  int probes_n = 101;
  auto* exhaust_cmd = app.add_subcommand("exhaust",
      "rescaled exhaustion convergence experiment");
  add_space_opts(exhaust_cmd);
  exhaust_cmd->add_option("--radii", radii, "ascending tube radii")
      ->required()
      ->delimiter(',');
  exhaust_cmd->add_option("--window", window, "probe window [0, w]")->required();
  exhaust_cmd->add_option("--probes", probes_n, "probe count")->capture_default_str();
  add_solver_opts(exhaust_cmd);
  add_out_opts(exhaust_cmd);
  exhaust_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const SpaceSpec space = resolve_space(o.space, o.dim);
      const ExhaustionResult ex = exhaustion_experiment(
          space, radii, window, shooting_config(o), probes_n);
      Emitter em;
      em.command = "exhaust";
      em.config_json = "{" + kv("space", o.space, true) + ", " +
                       kv("dim", std::to_string(o.dim)) + ", " +
                       kv("window", format_double(window)) + ", " +
                       kv("probes", std::to_string(probes_n)) + "}";
      em.add(resolve_out_path(o.out), o.format == "csv"
                                          ? convergence_report_to_csv(ex.report)
                                          : convergence_report_to_json(ex.report));
      em.commit();
      for (const auto& [r, err] : ex.failures)
        std::cerr << "radius " << r << " failed: " << err << "\n";
    });
  });

  // ---- ball ----
  std::vector<double> z_probes;
  auto* ball_cmd = app.add_subcommand("ball",
      "closed-form ball family convergence check");
  ball_cmd->add_option("--dim", o.dim, "complex dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ball_cmd->add_option("--radii", radii, "ascending ball radii")
      ->required()
      ->delimiter(',');
  ball_cmd->add_option("--probes", z_probes, "|z| probe values")
      ->required()
      ->delimiter(',');
  add_out_opts(ball_cmd);
  ball_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const ConvergenceReport rep = ball_exhaustion_check(o.dim, radii, z_probes);
      Emitter em;
      em.command = "ball";
      em.config_json = "{" + kv("dim", std::to_string(o.dim)) + "}";
      em.add(resolve_out_path(o.out), o.format == "csv"
                                          ? convergence_report_to_csv(rep)
                                          : convergence_report_to_json(rep));
      em.commit();
    });
  });

  // ---- completeness ----
  std::vector<double> cutoffs{1e-2, 1e-3, 1e-4};
  auto* comp_cmd = app.add_subcommand("completeness",
      "radial length growth toward the boundary");
  add_space_opts(comp_cmd);
  comp_cmd->add_option("--lambda", o.lambda, "Einstein constant (> 0)")
      ->capture_default_str();
  comp_cmd->add_option("--radius", radius, "tube radius")->required();
  comp_cmd->add_option("--cutoffs", cutoffs, "decreasing boundary distances")
      ->delimiter(',')
      ->capture_default_str();
  add_solver_opts(comp_cmd);
  add_out_opts(comp_cmd);
  comp_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const SpaceSpec space = resolve_space(o.space, o.dim);
      const PotentialSolution sol =
          solve_potential(space, o.lambda, radius, shooting_config(o));
      const CompletenessReport rep = completeness_length(sol, cutoffs);
      const BoundaryGrowthReport growth = boundary_growth_check(sol);
      Emitter em;
      em.command = "completeness";
      em.config_json = "{" + kv("space", o.space, true) + ", " +
                       kv("dim", std::to_string(o.dim)) + ", " +
                       kv("lambda", format_double(o.lambda)) + ", " +
                       kv("radius", format_double(radius)) + "}";
      em.add(resolve_out_path(o.out),
             o.format == "csv" ? completeness_report_to_csv(rep)
                               : completeness_report_to_json(rep));
      em.commit();
      std::cout << "boundary growth ratio > 1: "
                << (growth.ok ? "yes" : "no") << " (min "
                << format_double(growth.worst_ratio) << " over "
                << growth.checked << " points)\n";
    });
  });

  // ---- curvature ----
  double rmin = 1.0, rmax = 1.65, rstep = 0.01;
  auto* curv_cmd = app.add_subcommand("curvature",
      "center curvature criterion sweep over hyperbolic tubes");
  curv_cmd->add_option("--dim", o.dim, "real dimension n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* radii_opt =
      curv_cmd->add_option("--radii", radii, "explicit radii")->delimiter(',');
  curv_cmd->add_option("--rmin", rmin, "range start")->capture_default_str();
  curv_cmd->add_option("--rmax", rmax, "range end")->capture_default_str();
  curv_cmd->add_option("--rstep", rstep, "range step")->capture_default_str();
  add_solver_opts(curv_cmd);
  add_out_opts(curv_cmd);
  curv_cmd->callback([&] {
    exit_code = run_numeric([&] {
      std::vector<double> rs = radii;
      if (radii_opt->count() == 0) {
        for (double r = rmin; r <= rmax + 1e-12; r += rstep) rs.push_back(r);
      }
      const CurvatureSweep sweep =
          curvature_center_sweep(o.dim, rs, shooting_config(o));
      Emitter em;
      em.command = "curvature";
      em.config_json = "{" + kv("dim", std::to_string(o.dim)) + "}";
      em.add(resolve_out_path(o.out), o.format == "csv"
                                          ? curvature_sweep_to_csv(sweep)
                                          : curvature_sweep_to_json(sweep));
      em.commit();
    });
  });

  // ---- sweep ----
  bool no_warm_start = false;
  auto* sweep_cmd = app.add_subcommand("sweep",
      "solve a family of radii with warm-started brackets");
  add_space_opts(sweep_cmd);
  sweep_cmd->add_option("--lambda", o.lambda, "Einstein constant (> 0)")
      ->capture_default_str();
  sweep_cmd->add_option("--radii", radii, "ascending tube radii")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_flag("--no-warm-start", no_warm_start,
                      "solve radii independently");
  sweep_cmd->add_option("--jobs", o.jobs, "parallel solves (implies cold starts)")
      ->capture_default_str();
  add_solver_opts(sweep_cmd);
  add_out_opts(sweep_cmd);
  sweep_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const SpaceSpec space = resolve_space(o.space, o.dim);
      SweepOptions opts;
      opts.warm_start = !no_warm_start && o.jobs <= 1;
      opts.jobs = o.jobs;
      const std::vector<SweepEntry> entries =
          family_sweep(space, o.lambda, radii, shooting_config(o), {}, opts);
      Emitter em;
      em.command = "sweep";
      em.config_json = "{" + kv("space", o.space, true) + ", " +
                       kv("dim", std::to_string(o.dim)) + ", " +
                       kv("lambda", format_double(o.lambda)) + ", " +
                       kv("jobs", std::to_string(o.jobs)) + "}";
      em.add(resolve_out_path(o.out), o.format == "csv"
                                          ? sweep_summary_to_csv(entries)
                                          : sweep_summary_to_json(entries));
      em.commit();
    });
  });

  // ---- validate ----
  auto* val_cmd = app.add_subcommand("validate",
      "run the full oracle/invariant battery");
  std::string val_out;
  val_cmd->add_option("--out", val_out, "optional report path");
  val_cmd->callback([&] {
    exit_code = run_numeric([&] {
      const auto results = validation::run_validation_suite();
      std::cout << validation::to_table(results);
      if (!val_out.empty()) {
        Emitter em;
        em.command = "validate";
        em.config_json = "{}";
        em.add(resolve_out_path(val_out), validation::to_stable_json(results));
        em.commit();
      }
      if (!validation::all_passed(results))
        throw std::runtime_error("validation checks failed");
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }
  (void)kPi;
  return exit_code;
}
