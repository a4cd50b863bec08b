#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "scg/dynamics.hpp"
#include "scg/game.hpp"
#include "scg/parallel.hpp"

namespace scg {

/// Random two-pool experiment comparing the marginal contribution rule with the PoA-optimal rule.
struct ExperimentConfig {
  std::size_t runs = 200;
  std::size_t n = 10;
  std::size_t set_size = 10;   // resources per pool; there are two pools
  std::size_t rounds = 4;
  std::uint64_t seed = 1;
  TiePolicy tie_policy = TiePolicy::LowestActionIndex;

  void validate() const;
};

/// Per-step statistics of W_MC(a[m]) / W_PoA(a[m]) across runs; index m = 0 is the all-null start.
struct RatioSeries {
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
  std::vector<std::uint64_t> excluded;  // steps with W_PoA = 0 < W_MC

  std::size_t size() const { return mean.size(); }
  std::uint64_t excluded_total() const;
};

/// Independent per-run seed derived from the master seed and the run index.
std::uint64_t run_seed(std::uint64_t seed, std::size_t run_index);

/// Values uniform on [0, 1]; each agent gets {null, one resource from pool 1, one from pool 2}.
SetCoveringGame<double> random_game(const ExperimentConfig& cfg, std::uint64_t seed);

/// Welfare and potential after every step (index 0 is the start) for both rules on one game.
struct RunRecord {
  std::vector<double> welfare_mc;
  std::vector<double> welfare_poa;
  std::vector<double> potential_mc;
  std::vector<double> potential_poa;
};

RunRecord simulate_run(const ExperimentConfig& cfg, std::size_t run_index);

/// Runs execute on the OpenMP team; the reduction is done in run order, so the
/// result is bit-identical to the serial reference for any worker count.
RatioSeries run_experiment(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

void write_series_csv(const RatioSeries& series, std::ostream& out);
void export_series(const RatioSeries& series, const std::filesystem::path& path);

struct ExperimentSummary {
  double first_round_end_mean;
  double final_mean;
  std::uint64_t excluded_total;
};

ExperimentSummary summarize(const RatioSeries& series, const ExperimentConfig& cfg);

}  // namespace scg
