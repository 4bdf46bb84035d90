#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "modecluster/csv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string binary() {
  const char* env = std::getenv("MODECLUSTER_BIN");
  REQUIRE_MESSAGE(env != nullptr,
                  "MODECLUSTER_BIN must point at the CLI binary");
  return env;
}

fs::path workdir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "modecluster_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out_file = workdir() / "stdout.txt";
  const std::string cmd =
      binary() + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  r.out = {std::istreambuf_iterator<char>(in),
           std::istreambuf_iterator<char>()};
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in),
          std::istreambuf_iterator<char>()};
}

std::string quoted(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("generate writes data and labels and reports the config") {
  const auto data = workdir() / "moons.csv";
  const auto labels = workdir() / "moons_labels.csv";
  const auto r = run("generate two-moons --n 60 --noise 0.1 --seed 7 --out " +
                     quoted(data) + " --labels-out " + quoted(labels));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["n"] == 120);
  CHECK(report["d"] == 2);
  CHECK(report["config"]["seed"] == 7);
  const auto m = modecluster::load_csv(data);
  CHECK(m.rows() == 120);
  CHECK(m.cols() == 2);
  CHECK(modecluster::load_labels(labels).assignment.size() == 120);
}

TEST_CASE("generate degree-mixture defaults give 4000 points in 1D") {
  const auto data = workdir() / "degree.csv";
  const auto labels = workdir() / "degree_labels.csv";
  const auto r = run("generate degree-mixture --seed 1 --out " + quoted(data) +
                     " --labels-out " + quoted(labels));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["n"] == 4000);
  CHECK(report["d"] == 1);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("generate no-such-kind --seed 1").exit_code == 2);
  CHECK(run("cluster --k 2").exit_code == 2);  // missing input and algo
  CHECK(run("totally-unknown").exit_code == 2);
  CHECK(run("reproduce bogus-experiment").exit_code == 2);
}

TEST_CASE("data errors exit with code 3") {
  CHECK(run("cluster --algo kmeans --k 2 /nonexistent/x.csv").exit_code == 3);
  const auto tiny = workdir() / "tiny.csv";
  std::ofstream(tiny) << "0\n1\n";
  CHECK(run("cluster --algo kmeans --k 5 " + quoted(tiny)).exit_code == 3);
  const auto bad = workdir() / "bad.csv";
  std::ofstream(bad) << "1,x\n";
  CHECK(run("cluster --algo kmeans --k 1 " + quoted(bad)).exit_code == 3);
}

TEST_CASE("cluster kmeans reports objective, metrics, and echoes config") {
  const auto data = workdir() / "moons.csv";
  const auto truth = workdir() / "moons_labels.csv";
  const auto out_labels = workdir() / "kmeans_labels.csv";
  const auto r = run("cluster --algo kmeans --k 2 --restarts 20 --seed 0 "
                     "--truth " + quoted(truth) + " --out-labels " +
                     quoted(out_labels) + " --out-centroids " +
                     quoted(workdir() / "kmeans_centroids.csv") + " " +
                     quoted(data));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["algorithm"] == "kmeans");
  CHECK(report["config"]["restarts"] == 20);
  CHECK(report["objective"].is_number());
  CHECK(report["metrics"]["ari"].is_number());
  CHECK(report["metrics"]["nmi"].is_number());
  CHECK(modecluster::load_labels(out_labels).assignment.size() == 120);
}

TEST_CASE("cluster kmodes emits a 20-entry centroid path") {
  const auto data = workdir() / "moons.csv";
  const auto path_csv = workdir() / "path.csv";
  const auto r = run(
      "cluster --algo kmodes --k 2 --sigma-start 1 --sigma-target 0.1 "
      "--steps 20 --restarts 5 --seed 3 --emit-path " + quoted(path_csv) +
      " --out-labels " + quoted(workdir() / "kmodes_labels.csv") +
      " --out-centroids " + quoted(workdir() / "kmodes_centroids.csv") + " " +
      quoted(data));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["centroid_path"].size() == 20);
  CHECK(report["config"]["schedule"].size() == 20);
  CHECK(report["config"]["sigma_start"] == 1.0);
  CHECK(report["config"]["sigma_target"] == 0.1);

  const std::string path_text = read_file(path_csv);
  CHECK(path_text.rfind("sigma,cluster,dim_0,dim_1\n", 0) == 0);
  const auto lines = std::count(path_text.begin(), path_text.end(), '\n');
  CHECK(lines == 1 + 20 * 2);  // header + steps * k
}

TEST_CASE("cluster kmodes resolves auto bandwidths") {
  const auto data = workdir() / "moons.csv";
  const auto r = run("cluster --algo kmodes --k 2 --steps 5 --restarts 2 "
                     "--seed 1 " + quoted(data));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  const double start = report["config"]["sigma_start"];
  const double target = report["config"]["sigma_target"];
  CHECK(start > target);
  CHECK(target > 0.0);
}

TEST_CASE("cluster gms reports the mode count") {
  const auto data = workdir() / "moons.csv";
  const auto r = run("cluster --algo gms --sigma 0.1 " + quoted(data));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["mode_count"].is_number_integer());
  CHECK(report["mode_count"].get<int>() >= 2);
  CHECK(report["k_found"] == report["mode_count"]);
}

TEST_CASE("evaluate prints ari and nmi") {
  const auto labels = workdir() / "moons_labels.csv";
  const auto r = run("evaluate --truth " + quoted(labels) + " --pred " +
                     quoted(labels));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["ari"] == 1.0);
  CHECK(report["nmi"] == 1.0);
}

TEST_CASE("bandwidth prints the mean kth neighbor distance") {
  const auto data = workdir() / "line.csv";
  std::ofstream(data) << "0\n1\n2\n";
  const auto r = run("bandwidth --knn 1 " + quoted(data));
  REQUIRE(r.exit_code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0));
}

TEST_CASE("gms-scan reports counts over the grid") {
  const auto data = workdir() / "line2.csv";
  std::ofstream(data) << "0\n2\n";
  const auto r = run("gms-scan --sigma-lo 0.1 --sigma-hi 10 --steps 8 "
                     "--target-k 2 " + quoted(data));
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["entries"].size() == 8);
  CHECK(report["sigma_for_target"].is_number());
}

TEST_CASE("reproduce writes a manifest plus artifacts") {
  const auto outdir = workdir() / "rep_moons";
  const auto r = run("reproduce two-moons --seed 1 --outdir " + quoted(outdir));
  REQUIRE(r.exit_code == 0);
  const json manifest = json::parse(r.out);
  CHECK(manifest["experiment"] == "two-moons");
  CHECK(manifest["results"]["gms"]["mode_count"].is_number_integer());
  for (const char* name :
       {"data.csv", "truth_labels.csv", "kmeans_labels.csv",
        "kmodes_labels.csv", "kmodes_path.csv", "gms_labels.csv",
        "manifest.json"}) {
    CHECK_MESSAGE(fs::exists(outdir / name), name);
  }
  const json on_disk = json::parse(read_file(outdir / "manifest.json"));
  CHECK(on_disk["results"] == manifest["results"]);
}

TEST_CASE("runs are bit-reproducible from the echoed config") {
  const auto data = workdir() / "moons.csv";
  const auto labels_a = workdir() / "det_a_labels.csv";
  const auto labels_b = workdir() / "det_b_labels.csv";
  const auto cent_a = workdir() / "det_a_centroids.csv";
  const auto cent_b = workdir() / "det_b_centroids.csv";
  const std::string base =
      "cluster --algo kmodes --k 2 --sigma-start 1 --sigma-target 0.1 "
      "--steps 10 --restarts 5 --seed 42 " ;
  const auto a = run("--threads 2 " + base + "--out-labels " + quoted(labels_a) +
                     " --out-centroids " + quoted(cent_a) + " " + quoted(data));
  const auto b = run("--threads 1 " + base + "--out-labels " + quoted(labels_b) +
                     " --out-centroids " + quoted(cent_b) + " " + quoted(data));
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(read_file(labels_a) == read_file(labels_b));
  CHECK(read_file(cent_a) == read_file(cent_b));
  json ra = json::parse(a.out);
  json rb = json::parse(b.out);
  for (json* r : {&ra, &rb}) {
    r->erase("timing_s");
    r->erase("labels_file");
    r->erase("centroids_file");
    (*r)["config"].erase("threads");
  }
  CHECK(ra == rb);
}
