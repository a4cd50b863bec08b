// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "scg/constructions.hpp"
#include "scg/dynamics.hpp"
#include "scg/lp_oracle.hpp"
#include "scg/montecarlo.hpp"
#include "scg/rules.hpp"

namespace {

scg::Execution mode(const benchmark::State& state) {
  return state.range(0) ? scg::Execution::Parallel : scg::Execution::Serial;
}

void BM_MonteCarlo(benchmark::State& state) {
  scg::ExperimentConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(scg::run_experiment(cfg, mode(state)));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.runs));
}

void BM_SearchGames(benchmark::State& state) {
  auto f = scg::mc_rule<scg::Rational>(2);
  scg::GameFamily<scg::Rational> fam{2, 2, 3, scg::default_value_grid(f)};
  for (auto _ : state) benchmark::DoNotOptimize(scg::search_games(fam, f, 1, mode(state)));
}

void BM_EndStates(benchmark::State& state) {
  // equal values and overlapping pairs give many ties, so every layer is wide
  std::vector<scg::Resource<scg::Rational>> resources;
  for (int r = 0; r < 6; ++r) resources.push_back({"r" + std::to_string(r), scg::Rational(1)});
  std::vector<std::vector<scg::Action>> sets;
  for (std::size_t i = 0; i < 5; ++i) sets.push_back({{}, {0, 1}, {2, 3}, {4, 5}, {1, 2}, {3, 4}});
  scg::SetCoveringGame<scg::Rational> g(resources, sets, std::vector<std::size_t>(5, 0));
  auto f = scg::to_rational(scg::poa_optimal_rule(5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scg::enumerate_end_states(g, f, 3, scg::kDefaultEndStateCap, mode(state)));
  }
}

void BM_DualProgram(benchmark::State& state) {
  auto f = scg::to_rational(scg::poa_optimal_rule(7));
  for (auto _ : state) benchmark::DoNotOptimize(scg::build_dual_lp(f, 7, mode(state)));
}

}  // namespace

BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchGames)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EndStates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualProgram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
