#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("SIMDIAG_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SIMDIAG_CLI must point at the simdiag binary");
  return p;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "simdiag_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

int run_capture(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd =
      cli_path() + " " + args + " >" + stdout_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  const std::string open_failure = "cannot open " + p.string();
  REQUIRE_MESSAGE(in.good(), open_failure);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) fields.push_back(f);
  return fields;
}

} // namespace

TEST_CASE("field emits the demo grid with one header and nx*ny rows") {
  const fs::path out = scratch_dir() / "field.csv";
  const int rc = run("field --model davis-skodje --gamma 3 --grid 0.25:2:41,0:1:41 --out " +
                     out.string());
  CHECK(rc == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 1682); // header + 41*41
  CHECK(lines[0] ==
        "x,y,classical_tangent,classical_normal,classical_ratio,"
        "geodesic_tangent,geodesic_normal,geodesic_ratio");
  CHECK(fs::exists(out.string() + ".meta.json"));
}

TEST_CASE("field on a constant model: zero rates, nan ratios") {
  const fs::path out = scratch_dir() / "const.csv";
  const int rc =
      run("field --model constant --c 1,0 --grid 0:1:2,0:1:2 --out " + out.string());
  CHECK(rc == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 5);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = csv_fields(lines[r]);
    REQUIRE(f.size() == 8);
    CHECK(std::stod(f[2]) == 0.0);
    CHECK(std::stod(f[3]) == 0.0);
    CHECK(f[4] == "nan");
    CHECK(f[7] == "nan");
  }
}

TEST_CASE("cells outside the model domain become nan rows, not failures") {
  const fs::path out = scratch_dir() / "partial.csv";
  const int rc = run("field --model davis-skodje --gamma 3 --grid -0.5:1:4,0:1:3 --out " +
                     out.string());
  CHECK(rc == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 13); // header + 4*3
  int nan_rows = 0, ok_rows = 0;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = csv_fields(lines[r]);
    REQUIRE(f.size() == 8);
    if (f[2] == "nan")
      ++nan_rows;
    else
      ++ok_rows;
  }
  CHECK(nan_rows == 6); // the x = -0.5 and x = 0 columns
  CHECK(ok_rows == 6);
}

TEST_CASE("missing required output flag fails without writing") {
  const fs::path out = scratch_dir() / "never.csv";
  const int rc = run("field --model davis-skodje --gamma 3 --grid 0.25:2:5,0:1:5");
  CHECK(rc == 1);
  CHECK(!fs::exists(out));
}

TEST_CASE("invalid configurations exit with the usage code") {
  CHECK(run("field --model davis-skodje --gamma 1 --grid 0.25:2:5,0:1:5 --out " +
            (scratch_dir() / "g.csv").string()) == 1);
  CHECK(run("field --model nosuch --out " + (scratch_dir() / "g.csv").string()) == 1);
  CHECK(run("field --grid bad --out " + (scratch_dir() / "g.csv").string()) == 1);
  CHECK(run("sim --model davis-skodje --tol 0 --out " +
            (scratch_dir() / "g.csv").string()) == 1);
  CHECK(run("field --no-such-flag") == 1);
  CHECK(run("") == 1);
}

TEST_CASE("check passes on davis-skodje and reports each invariant") {
  const fs::path log = scratch_dir() / "check.log";
  const int rc = run_capture("check --model davis-skodje --gamma 3", log);
  CHECK(rc == 0);
  const std::string text = slurp(log);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("metric.g_TT_unit") != std::string::npos);
  CHECK(text.find("geodesic.residual") != std::string::npos);
  CHECK(text.find("stretching.sectional_identity") != std::string::npos);
  CHECK(text.find("all checks passed") != std::string::npos);
}

TEST_CASE("corrupted metric sign makes the compatibility check fail") {
  const fs::path log = scratch_dir() / "corrupt.log";
  const int rc = run_capture("check --model davis-skodje --gamma 3 --corrupt-metric", log);
  CHECK(rc == 3);
  const std::string text = slurp(log);
  CHECK(text.find("FAIL  connection.compatibility") != std::string::npos);
}

TEST_CASE("check passes on the constant (flat) model") {
  CHECK(run("check --model constant --c 2,3") == 0);
}

TEST_CASE("trajectory reproduces the decoupled exponential") {
  const fs::path out = scratch_dir() / "traj.csv";
  const int rc = run("trajectory --model davis-skodje --gamma 3 --x0 1,0.5 "
                     "--t-end 2 --dt 1e-3 --out " +
                     out.string());
  CHECK(rc == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2002); // header + 2001 points
  CHECK(lines[0] == "t,x1,x2,residual_max");
  for (std::size_t r = 1; r < lines.size(); r += 400) {
    const auto f = csv_fields(lines[r]);
    REQUIRE(f.size() == 4);
    const double t = std::stod(f[0]);
    CHECK(std::abs(std::stod(f[1]) - std::exp(-t)) <= 1e-8);
    CHECK(std::stod(f[3]) <= 1e-8); // geodesic residual along the solution
  }
}

TEST_CASE("trajectory with t_end equal to dt has two rows") {
  const fs::path out = scratch_dir() / "traj2.csv";
  const int rc = run("trajectory --model davis-skodje --gamma 3 --x0 1,0.5 "
                     "--t-end 0.5 --dt 0.5 --out " +
                     out.string());
  CHECK(rc == 0);
  CHECK(lines_of(slurp(out)).size() == 3); // header + 2
}

TEST_CASE("trajectory from outside the domain is a numerical failure") {
  const fs::path out = scratch_dir() / "traj3.csv";
  const int rc = run("trajectory --model davis-skodje --gamma 3 --x0 -1,0.5 "
                     "--t-end 1 --dt 0.1 --out " +
                     out.string());
  CHECK(rc == 2);
}

TEST_CASE("sim traces the slow manifold and reports errors") {
  const fs::path out = scratch_dir() / "sim.csv";
  const fs::path log = scratch_dir() / "sim.log";
  const int rc = run_capture("sim --model davis-skodje --gamma 3 --rpv 0.25:2:0.25 "
                             "--objective geodesic --tol 1e-8 --out " +
                                 out.string(),
                             log);
  CHECK(rc == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 9); // header + 8 fibers
  CHECK(lines[0] == "rpv_value,maximizer,objective_value,status,reference_value,abs_error");
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = csv_fields(lines[r]);
    REQUIRE(f.size() == 6);
    CHECK(f[3] == "converged");
    CHECK(std::stod(f[5]) <= 7.8e-3); // frozen dense-scan oracle bound
  }
  const std::string summary = slurp(log);
  CHECK(summary.find("entries=8 converged=8") != std::string::npos);
  CHECK(summary.find("max_abs_error=") != std::string::npos);
}

TEST_CASE("sim with the classical objective emits all rows") {
  const fs::path out = scratch_dir() / "sim_classical.csv";
  const int rc = run("sim --model davis-skodje --gamma 3 --rpv 0.25:2:0.25 "
                     "--objective classical --out " +
                     out.string());
  CHECK(rc == 0);
  CHECK(lines_of(slurp(out)).size() == 9);
}

TEST_CASE("sim with a single rpv value emits one row") {
  const fs::path out = scratch_dir() / "sim_one.csv";
  const int rc =
      run("sim --model davis-skodje --gamma 3 --rpv 1 --out " + out.string());
  CHECK(rc == 0);
  CHECK(lines_of(slurp(out)).size() == 2);
}

TEST_CASE("consecutive runs produce byte-identical output") {
  const fs::path a = scratch_dir() / "det_a.csv";
  const fs::path b = scratch_dir() / "det_b.csv";
  const std::string base =
      "field --model davis-skodje --gamma 3 --grid 0.25:2:9,0:1:9 --out ";
  REQUIRE(run(base + a.string()) == 0);
  REQUIRE(run(base + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  const fs::path sa = scratch_dir() / "det_sim_a.csv";
  const fs::path sb = scratch_dir() / "det_sim_b.csv";
  const std::string sim_base =
      "sim --model davis-skodje --gamma 3 --rpv 0.5:1.5:0.5 --out ";
  REQUIRE(run(sim_base + sa.string()) == 0);
  REQUIRE(run(sim_base + sb.string()) == 0);
  CHECK(slurp(sa) == slurp(sb));
}

TEST_CASE("rerunning from the sidecar reproduces identical output") {
  const fs::path a = scratch_dir() / "rt_a.csv";
  const fs::path b = scratch_dir() / "rt_b.csv";
  REQUIRE(run("field --model davis-skodje --gamma 3 --grid 0.25:2:7,0:1:7 --out " +
              a.string()) == 0);
  REQUIRE(run("field --config " + a.string() + ".meta.json --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  const fs::path sa = scratch_dir() / "rt_sim_a.csv";
  const fs::path sb = scratch_dir() / "rt_sim_b.csv";
  REQUIRE(run("sim --model davis-skodje --gamma 3 --rpv 0.5:1.5:0.25 --out " +
              sa.string()) == 0);
  REQUIRE(run("sim --config " + sa.string() + ".meta.json --out " + sb.string()) == 0);
  CHECK(slurp(sa) == slurp(sb));
}

TEST_CASE("sidecar records tool metadata and the full configuration") {
  const fs::path out = scratch_dir() / "meta.csv";
  REQUIRE(run("field --model davis-skodje --gamma 2.5 --grid 0.5:1:3,0:1:3 --out " +
              out.string()) == 0);
  const nlohmann::json meta = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta["tool"] == "simdiag");
  CHECK(meta["command"] == "field");
  CHECK(meta.contains("version"));
  CHECK(meta.contains("timing_seconds"));
  CHECK(meta["config"]["gamma"] == 2.5);
  CHECK(meta["config"]["grid"]["nx"] == 3);
}

TEST_CASE("json output format carries singular markers") {
  const fs::path out = scratch_dir() / "const.json";
  REQUIRE(run("field --model constant --c 1,0 --grid 0:1:2,0:1:2 --format json --out " +
              out.string()) == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  REQUIRE(doc["cells"].size() == 4);
  for (const auto& cell : doc["cells"]) {
    CHECK(cell["status"] == "ok");
    CHECK(cell["classical_ratio"] == "singular");
    CHECK(cell["geodesic_ratio"] == "singular");
  }

  const fs::path sim_out = scratch_dir() / "sim.json";
  REQUIRE(run("sim --model davis-skodje --gamma 3 --rpv 1 --format json --out " +
              sim_out.string()) == 0);
  const nlohmann::json sim_doc = nlohmann::json::parse(slurp(sim_out));
  REQUIRE(sim_doc["entries"].size() == 1);
  CHECK(sim_doc["entries"][0]["status"] == "converged");
}

TEST_CASE("sim requires explicit fiber bounds for models without a reference") {
  const fs::path out = scratch_dir() / "lin_sim.csv";
  CHECK(run("sim --model linear --A -1,0,0,-10 --rpv 1 --out " + out.string()) == 1);
  CHECK(run("sim --model linear --A -1,0,0,-10 --rpv 1 --fiber-bounds 0.1:0.9 --out " +
            out.string()) == 0);
  // the reference band is a graph over x, so rpv index 1 needs explicit bounds
  CHECK(run("sim --model davis-skodje --gamma 3 --rpv 0.4 --rpv-index 1 --out " +
            out.string()) == 1);
  const fs::path out2 = scratch_dir() / "rpv1_sim.csv";
  CHECK(run("sim --model davis-skodje --gamma 3 --rpv 0.4 --rpv-index 1 "
            "--fiber-bounds 0.3:1.5 --out " +
            out2.string()) == 0);
  const auto lines = lines_of(slurp(out2));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "rpv_value,maximizer,objective_value,status");
}
