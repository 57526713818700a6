#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support/schema_check.hpp"
#include "support/test_util.hpp"
#include "tubepot/grid_function.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using test_util::read_file;
using test_util::run_cmd;
using test_util::TempDir;
using test_util::validate_schema;

namespace {

const std::string kCli = TUBEPOT_CLI_PATH;
const fs::path kSchemas = TUBEPOT_SCHEMA_DIR;

uint64_t fnv1a64(const std::string& data) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

json load_schema(const std::string& name) {
  return json::parse(read_file(kSchemas / name));
}

bool dir_has_files(const fs::path& dir) {
  return fs::exists(dir) && !fs::is_empty(dir);
}

}  // namespace

TEST_CASE("solve writes a schema-valid solution with a matching manifest") {
  TempDir tmp;
  const fs::path out = tmp.path / "h.json";
  const auto res = run_cmd(kCli +
                           " solve --space hyperbolic --dim 2 --lambda 3"
                           " --radius 1.5707963 --grid 51 --out " +
                           out.string());
  CAPTURE(res.output);
  REQUIRE(res.exit_code == 0);
  REQUIRE(fs::exists(out));

  const json sol = json::parse(read_file(out));
  std::string why;
  CHECK(validate_schema(sol, load_schema("solution.schema.json"), &why));
  CAPTURE(why);
  CHECK(std::abs(sol["a"].get<double>()) < 1e-4);

  const fs::path mpath = tmp.path / "h.json.manifest.json";
  REQUIRE(fs::exists(mpath));
  const json manifest = json::parse(read_file(mpath));
  CHECK(validate_schema(manifest, load_schema("manifest.schema.json"), &why));
  // digest recomputation matches the emitted file
  char want[20];
  std::snprintf(want, sizeof(want), "%016llx",
                static_cast<unsigned long long>(fnv1a64(read_file(out))));
  CHECK(manifest["outputs"][0]["fnv1a64"].get<std::string>() == want);
  CHECK(manifest["outputs"][0]["bytes"].get<std::uint64_t>() ==
        fs::file_size(out));
}

TEST_CASE("repeat runs are byte-identical up to the wall clock") {
  TempDir tmp;
  const fs::path out1 = tmp.path / "a.json";
  const fs::path out2 = tmp.path / "b.json";
  const std::string common =
      " solve --space sphere --dim 2 --lambda 1 --radius 2 --grid 21 --out ";
  REQUIRE(run_cmd(kCli + common + out1.string()).exit_code == 0);
  REQUIRE(run_cmd(kCli + common + out2.string()).exit_code == 0);
  CHECK(read_file(out1) == read_file(out2));

  json m1 = json::parse(read_file(tmp.path / "a.json.manifest.json"));
  json m2 = json::parse(read_file(tmp.path / "b.json.manifest.json"));
  m1.erase("wall_seconds");
  m2.erase("wall_seconds");
  m1["outputs"][0].erase("path");
  m2["outputs"][0].erase("path");
  CHECK(m1 == m2);
}

TEST_CASE("ricci-flat CSV holds the flat quadratic") {
  TempDir tmp;
  const fs::path out = tmp.path / "K.csv";
  const auto res = run_cmd(kCli +
                           " ricci-flat --space euclidean --dim 3 --tmax 5"
                           " --grid 101 --format csv --out " +
                           out.string());
  REQUIRE(res.exit_code == 0);
  const tubepot::GridFunction g = tubepot::grid_from_csv(read_file(out));
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(g.h[i] - 0.5 * g.u[i] * g.u[i]) < 1e-10);

  const fs::path jout = tmp.path / "K.json";
  REQUIRE(run_cmd(kCli +
                  " ricci-flat --space sphere --dim 2 --tmax 2 --grid 21"
                  " --out " +
                  jout.string())
              .exit_code == 0);
  std::string why;
  CHECK(validate_schema(json::parse(read_file(jout)),
                        load_schema("ricci_flat.schema.json"), &why));
  CAPTURE(why);
}

TEST_CASE("reports from exhaust, ball, completeness, curvature, sweep") {
  TempDir tmp;
  std::string why;

  const fs::path ex = tmp.path / "ex.json";
  REQUIRE(run_cmd(kCli +
                  " exhaust --space euclidean --dim 2 --radii 2,4 --window 1"
                  " --probes 21 --out " +
                  ex.string())
              .exit_code == 0);
  CHECK(validate_schema(json::parse(read_file(ex)),
                        load_schema("convergence_report.schema.json"), &why));

  const fs::path ball = tmp.path / "ball.json";
  REQUIRE(run_cmd(kCli +
                  " ball --dim 2 --radii 10,100,1000 --probes 0.5,1 --out " +
                  ball.string())
              .exit_code == 0);
  const json ball_rep = json::parse(read_file(ball));
  CHECK(validate_schema(ball_rep,
                        load_schema("convergence_report.schema.json"), &why));
  CHECK(ball_rep["monotone_ok"].get<bool>());

  const fs::path comp = tmp.path / "comp.json";
  REQUIRE(run_cmd(kCli +
                  " completeness --space hyperbolic --dim 2 --lambda 3"
                  " --radius 1.5707963 --cutoffs 1e-2,1e-3 --out " +
                  comp.string())
              .exit_code == 0);
  CHECK(validate_schema(json::parse(read_file(comp)),
                        load_schema("completeness_report.schema.json"), &why));

  const fs::path curv = tmp.path / "curv.json";
  REQUIRE(run_cmd(kCli +
                  " curvature --dim 2 --radii 1.5,1.5707963,1.6 --out " +
                  curv.string())
              .exit_code == 0);
  const json curv_rep = json::parse(read_file(curv));
  CHECK(validate_schema(curv_rep,
                        load_schema("curvature_sweep.schema.json"), &why));
  CHECK(curv_rep["epsilon_estimate"].get<double>() >= 0.0);

  const fs::path sweep = tmp.path / "sweep.json";
  REQUIRE(run_cmd(kCli +
                  " sweep --space sphere --dim 2 --lambda 1 --radii 1,2"
                  " --out " +
                  sweep.string())
              .exit_code == 0);
  CHECK(validate_schema(json::parse(read_file(sweep)),
                        load_schema("sweep_summary.schema.json"), &why));
  CAPTURE(why);
}

TEST_CASE("usage errors exit 2 and leave no files behind") {
  TempDir tmp;
  const fs::path out = tmp.path / "x.json";

  const auto unknown_space = run_cmd(
      kCli + " solve --space torus --dim 2 --lambda 1 --radius 1 --out " +
      out.string());
  CHECK(unknown_space.exit_code == 2);
  CHECK(!dir_has_files(tmp.path));

  const auto missing_flag = run_cmd(kCli + " solve --out " + out.string());
  CHECK(missing_flag.exit_code == 2);

  const auto zero_lambda = run_cmd(
      kCli + " solve --space sphere --dim 2 --lambda 0 --radius 1 --out " +
      out.string());
  CHECK(zero_lambda.exit_code == 2);

  const auto beyond_rmax = run_cmd(
      kCli + " solve --space hyperbolic --dim 2 --lambda 1 --radius 3.2 --out " +
      out.string());
  CHECK(beyond_rmax.exit_code == 2);
  CHECK(!dir_has_files(tmp.path));
}

TEST_CASE("numeric failures exit 3 with an error record") {
  TempDir tmp;
  const fs::path out = tmp.path / "x.json";
  const auto res = run_cmd(kCli +
                           " solve --space sphere --dim 2 --lambda 1"
                           " --radius 2 --max-iters 2 --out " +
                           out.string());
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("\"numeric\"") != std::string::npos);
  CHECK(!dir_has_files(tmp.path));
}

TEST_CASE("bare output names respect TUBEPOT_OUT_DIR") {
  TempDir tmp;
  const auto res = run_cmd("TUBEPOT_OUT_DIR=" + tmp.path.string() + " " + kCli +
                           " ricci-flat --space euclidean --dim 2 --tmax 2"
                           " --grid 11 --out bare.json");
  REQUIRE(res.exit_code == 0);
  CHECK(fs::exists(tmp.path / "bare.json"));
  CHECK(fs::exists(tmp.path / "bare.json.manifest.json"));
}

TEST_CASE("config file supplies defaults; flags override it") {
  TempDir tmp;
  const fs::path conf = tmp.path / "conf.ini";
  {
    std::ofstream out(conf);
    out << "[solve]\ngrid=7\ntol=1e-5\n";
  }
  const fs::path out1 = tmp.path / "a.json";
  REQUIRE(run_cmd(kCli + " --config " + conf.string() +
                  " solve --space sphere --dim 2 --lambda 1 --radius 1.5"
                  " --out " +
                  out1.string())
              .exit_code == 0);
  json sol = json::parse(read_file(out1));
  // a 7-point probe grid plus adaptive steps stays small; the config's
  // loose tolerance admits a wider radius miss
  CHECK(std::abs(sol["achieved_radius"].get<double>() - 1.5) < 1e-5);

  const fs::path out2 = tmp.path / "b.json";
  REQUIRE(run_cmd(kCli + " --config " + conf.string() +
                  " solve --space sphere --dim 2 --lambda 1 --radius 1.5"
                  " --tol 1e-7 --out " +
                  out2.string())
              .exit_code == 0);
  sol = json::parse(read_file(out2));
  CHECK(std::abs(sol["achieved_radius"].get<double>() - 1.5) < 1e-7);
}

TEST_CASE("help renders and exits zero") {
  CHECK(run_cmd(kCli + " --help").exit_code == 0);
  CHECK(run_cmd(kCli + " solve --help").exit_code == 0);
  CHECK(run_cmd(kCli + " definitely-not-a-subcommand").exit_code == 2);
}

TEST_CASE("validate subcommand prints the battery and exits clean") {
  TempDir tmp;
  const fs::path out = tmp.path / "report.json";
  const auto res = run_cmd(kCli + " validate --out " + out.string());
  CAPTURE(res.output);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("PASS") != std::string::npos);
  CHECK(res.output.find("FAIL") == std::string::npos);
  std::string why;
  CHECK(validate_schema(json::parse(read_file(out)),
                        load_schema("validate_report.schema.json"), &why));
}
