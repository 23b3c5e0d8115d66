#include "doctest.h"

#include "test_util.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path cli_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() /
             ("hausflow_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& dir) {
  std::string cmd = std::string("\"") + HAUSFLOW_CLI_PATH + "\" " + args + " >\"" +
                    (dir / "stdout.txt").string() + "\" 2>\"" + (dir / "stderr.txt").string() +
                    "\"";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json report_of(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run exits by verdict and retains the iterate fields") {
  auto dir = cli_dir("run_euclid");
  int rc = run_cli("run --config " + testutil::config_path("line_euclidean") + " --out " +
                       dir.string(),
                   dir);
  CHECK(rc == 0);
  json rep = report_of(dir);
  CHECK(rep["schema_version"] == 1);
  CHECK(rep["command"] == "run");
  CHECK(rep["result"]["verdict"] == "converged");
  CHECK(rep["config"]["seed"] == 1729);
  std::string final_prov = rep["result"]["final_provenance"].get<std::string>();
  CHECK(fs::exists(dir / "d0.csv"));
  CHECK(fs::exists(dir / (final_prov + ".csv")));
  CHECK(fs::exists(dir / (final_prov + ".json")));
  std::string console = slurp(dir / "stdout.txt");
  CHECK(console.find("verdict: converged") != std::string::npos);

  auto again = cli_dir("run_euclid_again");
  CHECK(run_cli("run --config " + testutil::config_path("line_euclidean") + " --out " +
                    again.string(),
                again) == 0);
  CHECK(slurp(dir / "report.json") == slurp(again / "report.json"));

  auto threaded = cli_dir("run_euclid_threads");
  CHECK(run_cli("run --config " + testutil::config_path("line_euclidean") + " --threads 2 --out " +
                    threaded.string(),
                threaded) == 0);
  CHECK(slurp(dir / "report.json") == slurp(threaded / "report.json"));
}

TEST_CASE("seed flag overrides the configured seed in the echo") {
  auto dir = cli_dir("run_seed");
  CHECK(run_cli("run --config " + testutil::config_path("line_euclidean") +
                    " --seed 777 --out " + dir.string(),
                dir) == 0);
  CHECK(report_of(dir)["config"]["seed"] == 777);
}

TEST_CASE("divergence and iteration budget map to their own exit codes") {
  auto dir = cli_dir("run_cuberoot");
  CHECK(run_cli("run --config " + testutil::config_path("line_cuberoot") + " --out " +
                    dir.string(),
                dir) == 2);
  CHECK(report_of(dir)["result"]["verdict"] == "diverged");

  auto tdir = cli_dir("run_torus");
  CHECK(run_cli("run --config " + testutil::config_path("torus_quotient") + " --out " +
                    tdir.string(),
                tdir) == 3);
  json rep = report_of(tdir);
  CHECK(rep["result"]["verdict"] == "max_iter_reached");
  CHECK(rep["result"]["band_fallback_edges"] == 0);
}

TEST_CASE("configuration problems exit 1 with a message") {
  auto dir = cli_dir("run_missing");
  CHECK(run_cli("run --config /nonexistent.json --out " + dir.string(), dir) == 1);
  CHECK(slurp(dir / "stderr.txt").find("error:") != std::string::npos);

  // reach sqrt(2) but a zero-padding window: the flow cannot evaluate translates
  auto pdir = cli_dir("run_padding");
  CHECK(run_cli("run --config " + testutil::config_path("line_semigroup") + " --out " +
                    pdir.string(),
                pdir) == 1);
  CHECK(slurp(pdir / "stderr.txt").find("padding") != std::string::npos);

  auto hdir = cli_dir("help");
  CHECK(run_cli("--help", hdir) == 0);
  CHECK(run_cli("bogus", hdir) == 1);
  CHECK(run_cli("run", hdir) == 1);  // --config is required
}

TEST_CASE("verify passes the full property battery on the arctan line") {
  auto dir = cli_dir("verify_arctan");
  CHECK(run_cli("verify --config " + testutil::config_path("line_arctan") + " --out " +
                    dir.string(),
                dir) == 0);
  json rep = report_of(dir);
  CHECK(rep["command"] == "verify");
  CHECK(rep["flow_verdict"] == "converged");
  CHECK(rep["all_passed"] == true);
  REQUIRE(rep["properties"].size() == 6);
  for (const auto& p : rep["properties"]) {
    CAPTURE(p["name"].get<std::string>());
    CHECK(p["passed"] == true);
    CHECK(p["skipped"] == false);
  }
  std::string console = slurp(dir / "stdout.txt");
  CHECK(console.find("pass") != std::string::npos);
}

TEST_CASE("semigroup survey matches the frozen word table") {
  auto dir = cli_dir("semigroup_line");
  CHECK(run_cli("semigroup --config " + testutil::config_path("line_semigroup") + " --out " +
                    dir.string(),
                dir) == 0);
  json rep = report_of(dir);
  CHECK(rep["command"] == "semigroup");
  CHECK(rep["isotropy_trivial"] == true);
  CHECK(rep["bracket"]["generating"] == true);
  CHECK(rep["bracket"]["closure_dim"] == 1);

  auto oracle = testutil::load_json(testutil::oracle_path("words-unit-interval"));
  REQUIRE(rep["rows"].size() == oracle["rows"].size());
  for (std::size_t k = 0; k < oracle["rows"].size(); ++k) {
    const auto& got = rep["rows"][k];
    const auto& want = oracle["rows"][k];
    CAPTURE(k);
    CHECK(got["maxlen"] == want["maxlen"]);
    CHECK(got["cloud_size"] == want["cloud_size"]);
    CHECK(got["inverse_cloud_size"] == want["inverse_cloud_size"]);
    CHECK(std::abs(got["covering_radius"].get<double>() -
                   want["covering_radius"].get<double>()) <= 1e-6);
    CHECK(std::abs(got["inverse_covering_radius"].get<double>() -
                   want["inverse_covering_radius"].get<double>()) <= 1e-6);
  }

  std::string csv = slurp(dir / "semigroup.csv");
  CHECK(csv.rfind("maxlen,cloud_size,covering_radius,inverse_cloud_size,inverse_covering_radius\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(oracle["rows"].size()));
}

TEST_CASE("finsler table reports a unit norm for the arctan generator direction") {
  auto dir = cli_dir("finsler_arctan");
  CHECK(run_cli("finsler --config " + testutil::config_path("line_arctan") + " --out " +
                    dir.string(),
                dir) == 0);
  json rep = report_of(dir);
  CHECK(rep["command"] == "finsler");
  CHECK(rep["sigma_sample"]["count"].get<int>() > 343);
  CHECK(rep["sigma_sample"]["description"].get<std::string>().find("length 8") !=
        std::string::npos);
  // each configured direction contributes itself and its double to the table
  REQUIRE(rep["directions"].size() == 2);
  const auto& d0 = rep["directions"][0];
  CHECK(d0["direction"] == json::array({1.0}));
  CHECK(d0["diverged"] == false);
  CHECK(d0["value"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
  const auto& d1 = rep["directions"][1];
  CHECK(d1["direction"] == json::array({2.0}));
  CHECK(d1["value"].get<double>() == doctest::Approx(2.0).epsilon(0.04));
  CHECK(rep["symmetry_defects"][0].get<double>() <= 1e-12);
  CHECK(rep["homogeneity_defect"].get<double>() <= 1e-6);
  CHECK(rep["sup_limsup"]["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fs::exists(dir / "norms.csv"));
  std::string csv = slurp(dir / "norms.csv");
  CHECK(csv.rfind("v1,value,diverged\n", 0) == 0);
}

TEST_CASE("oracle regeneration is byte identical to the committed artifacts") {
  auto dir = cli_dir("oracle");
  CHECK(run_cli("oracle --case words-unit-interval --out " + dir.string(), dir) == 0);
  CHECK(slurp(dir / "words-unit-interval.json") ==
        slurp(testutil::oracle_path("words-unit-interval")));
}

}  // TEST_SUITE
