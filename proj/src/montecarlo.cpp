#include "scg/montecarlo.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>

#include "scg/error.hpp"
#include "scg/rules.hpp"

namespace scg {

void ExperimentConfig::validate() const {
  if (runs < 1) throw InvalidInputError("experiment needs runs >= 1");
  if (n < 2) throw InvalidInputError("experiment needs n >= 2");
  if (set_size < 1) throw InvalidInputError("experiment needs set_size >= 1");
  if (rounds < 1) throw InvalidInputError("experiment needs rounds >= 1");
  if (tie_policy == TiePolicy::EnumerateAll) {
    throw InvalidInputError("experiment runs sample single paths; enumerate-all is not allowed");
  }
}

std::uint64_t RatioSeries::excluded_total() const {
  std::uint64_t total = 0;
  for (auto e : excluded) total += e;
  return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void record(const Trajectory<double>& t, std::vector<double>& welfare, std::vector<double>& potential) {
  welfare.assign(1, 0.0);
  potential.assign(1, 0.0);
  for (const auto& s : t.steps) {
    welfare.push_back(s.welfare);
    potential.push_back(s.potential);
  }
}

}  // namespace

std::uint64_t run_seed(std::uint64_t seed, std::size_t run_index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(run_index));
}

SetCoveringGame<double> random_game(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, cfg.set_size - 1);

  std::vector<Resource<double>> resources;
  resources.reserve(2 * cfg.set_size);
  for (std::size_t pool = 0; pool < 2; ++pool) {
    for (std::size_t r = 0; r < cfg.set_size; ++r) {
      resources.push_back({std::string(1, static_cast<char>('a' + pool)) + std::to_string(r + 1), value(rng)});
    }
  }
  std::vector<std::vector<Action>> actions;
  actions.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const std::size_t first = pick(rng);
    const std::size_t second = cfg.set_size + pick(rng);
    actions.push_back({{}, {first}, {second}});
  }
  return SetCoveringGame<double>(std::move(resources), std::move(actions), std::vector<std::size_t>(cfg.n, 0));
}

RunRecord simulate_run(const ExperimentConfig& cfg, std::size_t run_index) {
  const std::uint64_t seed = run_seed(cfg.seed, run_index);
  auto game = random_game(cfg, seed);
  const auto mc = mc_rule<double>(cfg.n);
  const auto poa = poa_optimal_rule(cfg.n, 1e-15);
  RunRecord out;
  record(run_round(game, mc, cfg.rounds, cfg.tie_policy, seed), out.welfare_mc, out.potential_mc);
  record(run_round(game, poa, cfg.rounds, cfg.tie_policy, seed), out.welfare_poa, out.potential_poa);
  return out;
}

RatioSeries run_experiment(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  const std::size_t steps = cfg.n * cfg.rounds + 1;
  std::vector<RunRecord> runs(cfg.runs);
  const auto count = static_cast<std::int64_t>(cfg.runs);
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < count; ++r) {
      try {
        runs[static_cast<std::size_t>(r)] = simulate_run(cfg, static_cast<std::size_t>(r));
      } catch (...) {
#pragma omp critical(scg_experiment_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::int64_t r = 0; r < count; ++r) {
      runs[static_cast<std::size_t>(r)] = simulate_run(cfg, static_cast<std::size_t>(r));
    }
  }

  RatioSeries series;
  series.mean.assign(steps, 0.0);
  series.min.assign(steps, std::numeric_limits<double>::infinity());
  series.max.assign(steps, -std::numeric_limits<double>::infinity());
  series.excluded.assign(steps, 0);
  std::vector<std::uint64_t> samples(steps, 0);
  for (const auto& run : runs) {
    for (std::size_t m = 0; m < steps; ++m) {
      const double w_mc = run.welfare_mc[m];
      const double w_poa = run.welfare_poa[m];
      double ratio;
      if (w_poa == 0.0) {
        if (w_mc > 0.0) {
          ++series.excluded[m];
          continue;
        }
        ratio = 1.0;
      } else {
        ratio = w_mc / w_poa;
      }
      series.mean[m] += ratio;
      series.min[m] = std::min(series.min[m], ratio);
      series.max[m] = std::max(series.max[m], ratio);
      ++samples[m];
    }
  }
  for (std::size_t m = 0; m < steps; ++m) {
    if (samples[m] == 0) {
      series.mean[m] = series.min[m] = series.max[m] = std::numeric_limits<double>::quiet_NaN();
    } else {
      series.mean[m] /= static_cast<double>(samples[m]);
    }
  }
  return series;
}

void write_series_csv(const RatioSeries& series, std::ostream& out) {
  out << "step,mean,min,max,excluded_count\n";
  for (std::size_t m = 0; m < series.size(); ++m) {
    out << m << ',' << to_string(series.mean[m]) << ',' << to_string(series.min[m]) << ','
        << to_string(series.max[m]) << ',' << series.excluded[m] << '\n';
  }
}

void export_series(const RatioSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_series_csv(series, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ExperimentSummary summarize(const RatioSeries& series, const ExperimentConfig& cfg) {
  if (series.size() <= cfg.n) throw InvalidInputError("series is shorter than one round");
  return {series.mean[cfg.n], series.mean.back(), series.excluded_total()};
}

}  // namespace scg
