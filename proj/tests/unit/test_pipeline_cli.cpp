#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sys/wait.h>

#include "fixture_checks.hpp"
#include "lsmapper/error.hpp"
#include "lsmapper/io.hpp"
#include "lsmapper/pipeline.hpp"
#include "oracles.hpp"

using namespace lsm;

namespace {

RunResult run_figure1(std::optional<std::size_t> s) {
  auto fx = fixtures::figure1();
  fx.config.s = s;
  Rng rng(0);
  return run_pipeline(fx.config, fx.data, fx.filter, rng);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lsmapper_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("pipeline_cli") {
  TEST_CASE("subdivision recovers the intersections a coarse graph misses") {
    auto coarse = run_figure1(0);
    auto fine = run_figure1(std::nullopt);
    CHECK(fine.calibration.s_calibrated);
    CHECK(fine.calibration.s_n > 0);
    CHECK(fine.report.has_crossings());
    CHECK(betti_numbers(coarse.mapper) == Betti{3, 0});
    CHECK(betti_numbers(fine.mapper) == Betti{1, 1});
    CHECK_FALSE(canonical_form(coarse.mapper, coarse.graph) == canonical_form(fine.mapper, fine.graph));
  }

  TEST_CASE("a single point gives a single node") {
    RunConfig c;
    c.delta = 1.0;
    c.cover.intervals = 3;
    Dataset d;
    d.cloud = PointCloud(std::vector<Vector>{{0.5, 0.5}});
    Rng rng(0);
    auto r = run_pipeline(c, d, coordinate_filter(d.cloud, 1), rng);
    CHECK(r.mapper.nodes.size() == 1);
    CHECK(r.betti == Betti{1, 0});
  }

  TEST_CASE("circle under height through the whole pipeline") {
    auto circle = fixtures::circle_mapper();
    RunConfig c;
    c.delta = 0.2;
    c.cover.intervals = 8;
    c.cover.gain = 0.3;
    Dataset d;
    // Same points as the frozen circle fixture.
    auto pts = nlohmann::json::parse(read_text_file(fixtures::directory() / "mapper.json"))["circle"]["points"];
    d.cloud = PointCloud(pts.get<std::vector<Vector>>());
    Rng rng(1);
    auto r = run_pipeline(c, d, coordinate_filter(d.cloud, 1), rng);
    CHECK(r.betti == Betti{1, 1});
    CHECK(r.mapper.nodes.size() == circle.mapper.nodes.size());
  }

  TEST_CASE("identical configs give identical artifacts") {
    RunConfig c;
    c.input.generator = "circle";
    c.input.n = 300;
    c.filter.kind = "coordinate";
    c.filter.axis = 1;
    c.cover.intervals = 6;
    c.seed = 12;
    auto a = run_estimator(c);
    auto b = run_estimator(c);
    CHECK(a.mapper_json() == b.mapper_json());
    CHECK(a.summary_json() == b.summary_json());
    auto summary = nlohmann::json::parse(a.summary_json());
    CHECK(summary.dump().find("delta_n") != std::string::npos);
    CHECK(summary.dump().find("s_n") != std::string::npos);
    CHECK(summary.dump().find("\"seed\"") != std::string::npos);
  }

  TEST_CASE("config json round trip and validation") {
    RunConfig c;
    c.input.generator = "annulus";
    c.input.n = 100;
    c.filter.kind = "nw_mean";
    c.input.response_generator = "gaussian";
    c.cover.kind = CoverKind::ThickenedVoronoi;
    c.cover.k = 4;
    c.delta = 0.3;
    auto text = c.to_json();
    CHECK(RunConfig::from_json(text).to_json() == text);
    CHECK_THROWS_AS(RunConfig::from_json("{\"cover\": {\"kind\": \"spiral\"}}"), Error);
    CHECK_THROWS_AS(RunConfig::from_json("{not json"), Error);
  }

  TEST_CASE("stage failures name the stage") {
    RunConfig c;
    c.input.generator = "blobs";
    c.input.n = 50;
    c.input.centers = {{0.0, 0.0}, {3.0, 0.0}};
    c.filter.kind = "knn";
    c.filter.k_nn = 100;
    c.delta = 0.5;
    try {
      run_estimator(c);
      FAIL("expected a stage error");
    } catch (const StageError& e) {
      CHECK(e.stage() == "filter");
      CHECK(e.inner_kind() == ErrorKind::Parameter);
    }
  }

  TEST_CASE("compare spaces") {
    auto a = FinitePseudometricSpace::from_matrix(3, {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0});
    CHECK(compare_spaces(a, a).gh_exact.value() == 0.0);
    std::vector<double> twice;
    for (double x : a.matrix()) twice.push_back(2 * x);
    auto b = FinitePseudometricSpace::from_matrix(3, twice);
    auto rep = compare_spaces(a, b);
    CHECK(rep.gh_lower == doctest::Approx(1.0));
    CHECK(rep.label_distortion.value() == doctest::Approx(2.0));

    auto c = FinitePseudometricSpace::from_matrix(2, {0, 1.2, 1.2, 0});
    CHECK(compare_spaces(a, c).gh_exact.value() == doctest::Approx(oracle::gromov_hausdorff_bruteforce(a, c)));
  }

#ifdef LSMAPPER_CLI_PATH
  TEST_CASE("cli exit codes") {
    auto dir = scratch("cli");
    auto run = [&](const std::string& args) {
      std::string cmd = std::string(LSMAPPER_CLI_PATH) + " " + args + " >" + (dir / "out.txt").string() + " 2>&1";
      int status = std::system(cmd.c_str());
      return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    write_text_file(dir / "ok.json",
                    R"({"input": {"generator": "circle", "n": 200}, "filter": {"kind": "coordinate", "axis": 1},
                        "cover": {"intervals": 6}, "seed": 3})");
    write_text_file(dir / "bad.json", R"({"cover": {"gain": 1.5}})");
    write_text_file(dir / "stage.json",
                    R"({"input": {"generator": "blobs", "n": 50, "centers": [[0, 0], [3, 0]]}, "filter": {"kind": "knn", "k_nn": 100},
                        "delta": 0.5})");
    CHECK(run("run --config " + (dir / "ok.json").string() + " --out " + (dir / "run").string()) == 0);
    CHECK(std::filesystem::exists(dir / "run" / "mapper.json"));
    CHECK(run("calibrate --config " + (dir / "ok.json").string()) == 0);
    CHECK(run("run --config " + (dir / "bad.json").string()) == 2);
    CHECK(run("run --config " + (dir / "missing.json").string()) == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("run --config " + (dir / "stage.json").string()) == 3);
    CHECK(run("generate --config " + (dir / "ok.json").string() + " --out " + (dir / "gen").string()) == 0);
    CHECK(std::filesystem::exists(dir / "gen" / "points.csv"));
  }
#endif
}
