#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scg/error.hpp"
#include "scg/montecarlo.hpp"

using namespace scg;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.runs = 20;
  cfg.n = 4;
  cfg.set_size = 3;
  cfg.rounds = 3;
  cfg.seed = 9;
  return cfg;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("random games are reproducible and well formed") {
  ExperimentConfig cfg;
  auto a = random_game(cfg, 77);
  auto b = random_game(cfg, 77);
  CHECK(a.num_resources() == 20);
  CHECK(a.num_agents() == 10);
  for (std::size_t i = 0; i < a.num_agents(); ++i) {
    CHECK(a.actions(i).size() == 3);
    CHECK(a.action(i, a.null_index(i)).empty());
    CHECK(a.actions(i) == b.actions(i));
  }
  for (std::size_t r = 0; r < a.num_resources(); ++r) {
    CHECK(a.value(r) == b.value(r));
    CHECK(a.value(r) >= 0.0);
    CHECK(a.value(r) <= 1.0);
  }
}

TEST_CASE("run seeds differ across runs") {
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) != run_seed(2, 0));
  CHECK(run_seed(3, 4) == run_seed(3, 4));
}

TEST_CASE("per-run invariants") {
  auto cfg = small_config();
  for (std::size_t run = 0; run < cfg.runs; ++run) {
    auto rec = simulate_run(cfg, run);
    REQUIRE(rec.welfare_mc.size() == cfg.n * cfg.rounds + 1);
    CHECK(rec.welfare_mc[0] == 0.0);
    for (std::size_t s = 1; s < rec.welfare_mc.size(); ++s) {
      REQUIRE(rec.welfare_mc[s] >= rec.welfare_mc[s - 1] - 1e-12);
      REQUIRE(rec.potential_mc[s] >= rec.potential_mc[s - 1] - 1e-12);
      REQUIRE(rec.potential_poa[s] >= rec.potential_poa[s - 1] - 1e-12);
    }
  }
}

TEST_CASE("series statistics are ordered") {
  auto series = run_experiment(small_config());
  REQUIRE(series.size() == 13);
  CHECK(series.mean[0] == 1.0);
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (std::isnan(series.mean[s])) continue;
    CHECK(series.min[s] <= series.mean[s] + 1e-15);
    CHECK(series.mean[s] <= series.max[s] + 1e-15);
  }
}

TEST_CASE("a single run reduces to its own welfare ratio") {
  ExperimentConfig cfg = small_config();
  cfg.runs = 1;
  auto rec = simulate_run(cfg, 0);
  auto series = run_experiment(cfg);
  CHECK(series.mean[0] == 1.0);
  for (std::size_t s = 1; s < series.size(); ++s) {
    if (rec.welfare_poa[s] == 0.0) continue;
    CHECK(series.mean[s] == rec.welfare_mc[s] / rec.welfare_poa[s]);
    CHECK(series.min[s] == series.max[s]);
  }
}

TEST_CASE("serial and parallel experiments are bit-identical") {
  auto cfg = small_config();
  std::ostringstream a, b;
  write_series_csv(run_experiment(cfg, Execution::Serial), a);
  write_series_csv(run_experiment(cfg, Execution::Parallel), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("CSV export") {
  std::ostringstream empty;
  write_series_csv(RatioSeries{}, empty);
  CHECK(empty.str() == "step,mean,min,max,excluded_count\n");

  ExperimentConfig cfg = small_config();
  cfg.n = 10;
  cfg.rounds = 4;
  cfg.runs = 5;
  auto series = run_experiment(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "scg_mc_test";
  std::filesystem::create_directories(dir);
  export_series(series, dir / "a.csv");
  export_series(series, dir / "b.csv");
  const auto text = read_file(dir / "a.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 42);
  CHECK(text == read_file(dir / "b.csv"));
  CHECK_THROWS_AS(export_series(series, dir / "missing" / "c.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.tie_policy = TiePolicy::EnumerateAll;
  CHECK_THROWS(cfg.validate());
  cfg = ExperimentConfig{};
  cfg.runs = 0;
  CHECK_THROWS(cfg.validate());
}
