#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scg/game.hpp"
#include "scg/parallel.hpp"

namespace scg {

/// How an agent picks among tied best responses.
enum class TiePolicy { EnumerateAll, LowestActionIndex, PreferStay, SeededRandom };

TiePolicy parse_tie_policy(const std::string& name);
std::string to_string(TiePolicy policy);

inline constexpr std::uint64_t kDefaultEndStateCap = 1'000'000;

template <typename T>
struct TrajectoryStep {
  std::size_t step;    // 0-based; agent (step mod n) acts
  std::size_t agent;   // 0-based
  std::uint32_t action;
  T welfare;           // after the move
  T potential;         // after the move
};

template <typename T>
struct Trajectory {
  JointAction start;
  JointAction end;
  std::vector<TrajectoryStep<T>> steps;
};

template <typename T>
struct EfficiencyReport {
  std::optional<T> pob_formula;   // 1-round closed form; set only for k = 1
  T pob_empirical;
  std::optional<T> poa_formula;
  std::optional<T> poa_empirical;
  JointAction witness_end;
  JointAction witness_opt;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t end_state_count = 0;
};

/// Full argmax of agent i's utility against a_{-i}, in ascending action-index order. Never empty.
template <typename T>
std::vector<std::uint32_t> best_responses(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                          std::size_t agent, const JointAction& a);

/// One sampled k-round trajectory from the all-null profile, agents acting 1..n cyclically.
template <typename T>
Trajectory<T> run_round(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                        TiePolicy policy, std::uint64_t seed = 0);

/// E(k): every profile reachable at the end of some tie-consistent k-round trajectory, sorted.
template <typename T>
std::vector<JointAction> enumerate_end_states(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                              std::size_t k, std::uint64_t cap = kDefaultEndStateCap,
                                              Execution exec = Execution::Parallel);

/// A tie-consistent k-round trajectory ending at `target`; throws InvalidInputError if target is not in E(k).
template <typename T>
Trajectory<T> witness_trajectory(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                                 const JointAction& target, std::uint64_t cap = kDefaultEndStateCap);

/// min_{a in E(k)} W(a) / max_a W(a), with witnesses.
template <typename T>
EfficiencyReport<T> empirical_pob(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                                  std::uint64_t cap = kDefaultEndStateCap, Execution exec = Execution::Parallel);

template <typename T>
bool is_nash(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, const JointAction& a);

/// Every pure Nash equilibrium, by exhaustive profile enumeration.
template <typename T>
std::vector<JointAction> nash_equilibria(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                         std::uint64_t cap = kDefaultProfileCap);

/// min welfare over Nash equilibria / optimal welfare.
template <typename T>
T empirical_poa(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::uint64_t cap = kDefaultProfileCap);

/// empirical_pob plus both PoA fields.
template <typename T>
EfficiencyReport<T> efficiency_report(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k);

}  // namespace scg
