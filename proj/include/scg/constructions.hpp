#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "scg/dynamics.hpp"
#include "scg/game.hpp"
#include "scg/parallel.hpp"

namespace scg {

template <typename T>
struct ConstructionReport {
  SetCoveringGame<T> game;
  T predicted;
  T achieved;
  bool matched;  // predicted == achieved, exact in rational mode
  Trajectory<T> witness;
};

/// Worst case for one round: a shared resource r1 of value 1 and, for agent i < n, a private
/// alternative of value f(i)/f(1) that agent i is indifferent to once i-1 agents sit on r1.
/// Agent n can only take r1. Actions are ordered {r1}, {alt}, null so lowest-index tie-breaking
/// follows the bad path. Needs min_{j<=n} f(j) = f(n).
template <typename T>
SetCoveringGame<T> worst_case_one_round(const UtilityRule<T>& rule, std::size_t n);

/// Two-agent game whose PoB is 1/2 for every k: resources {1, 1, f(2), 0},
/// A1 = {null, {r1}, {r2}}, A2 = {null, {r3}, {r1}}, agents 3..n get {null, {r4}}.
template <typename T>
SetCoveringGame<T> build_gf(const UtilityRule<T>& rule, std::size_t n);

/// Compares the 1-round closed form against exhaustive enumeration on worst_case_one_round.
template <typename T>
ConstructionReport<T> verify_worst_case(const UtilityRule<T>& rule, std::size_t n);

/// Compares 1/2 against the exhaustive k-round PoB of build_gf.
template <typename T>
ConstructionReport<T> verify_gf(const UtilityRule<T>& rule, std::size_t n, std::size_t k);

/// Small games: n agents, up to max_resources resources with values from value_grid, and
/// per agent the null action plus up to max_actions distinct nonempty resource subsets.
template <typename T>
struct GameFamily {
  std::size_t n = 2;
  std::size_t max_actions = 2;
  std::size_t max_resources = 3;
  std::vector<T> value_grid;
};

/// {0, f(2), 1/2, 1}, deduplicated and sorted.
template <typename T>
std::vector<T> default_value_grid(const UtilityRule<T>& rule);

inline constexpr std::uint64_t kDefaultFamilyCap = 50'000'000;

/// Raw candidate count before pruning.
template <typename T>
std::uint64_t family_size(const GameFamily<T>& family);

template <typename T>
struct SearchResult {
  std::optional<T> min_pob;                       // empty when no game has positive optimum
  std::optional<SetCoveringGame<T>> witness;
  std::uint64_t candidates = 0;
  std::uint64_t evaluated = 0;
};

/// Minimum empirical k-round PoB over the family. Resource values are enumerated as sorted
/// multisets and games leaving a resource unused are pruned (both are relabelings of smaller
/// members). Ties go to the first game in enumeration order, so the result does not depend
/// on how the work is partitioned.
template <typename T>
SearchResult<T> search_games(const GameFamily<T>& family, const UtilityRule<T>& rule, std::size_t k,
                             Execution exec = Execution::Parallel, std::uint64_t cap = kDefaultFamilyCap);

}  // namespace scg
