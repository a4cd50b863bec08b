#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scg/numeric.hpp"

namespace scg {

using ResourceIndex = std::size_t;

/// A subset of resources, stored as sorted unique indices into the game's resource list.
using Action = std::vector<ResourceIndex>;

template <typename T>
struct Resource {
  std::string id;
  T value;
};

/// One action index per agent. Agents are 0-based here; documentation counts from 1.
struct JointAction {
  std::vector<std::uint32_t> choices;

  std::size_t size() const { return choices.size(); }
  std::uint32_t operator[](std::size_t i) const { return choices[i]; }
  std::uint32_t& operator[](std::size_t i) { return choices[i]; }

  friend auto operator<=>(const JointAction&, const JointAction&) = default;
  friend bool operator==(const JointAction&, const JointAction&) = default;
};

struct JointActionHash {
  std::size_t operator()(const JointAction& a) const noexcept;
};

inline constexpr std::uint64_t kDefaultProfileCap = 10'000'000;

/// A set covering game: agents pick resource subsets, welfare is the value of the union.
/// Immutable after construction.
template <typename T>
class SetCoveringGame {
 public:
  SetCoveringGame(std::vector<Resource<T>> resources, std::vector<std::vector<Action>> action_sets,
                  std::vector<std::size_t> null_index);

  std::size_t num_agents() const { return action_sets_.size(); }
  std::size_t num_resources() const { return resources_.size(); }

  const std::vector<Resource<T>>& resources() const { return resources_; }
  const T& value(ResourceIndex r) const { return resources_[r].value; }

  const std::vector<Action>& actions(std::size_t agent) const { return action_sets_[agent]; }
  const Action& action(std::size_t agent, std::size_t index) const { return action_sets_[agent][index]; }
  std::size_t null_index(std::size_t agent) const { return null_index_[agent]; }
  const std::vector<std::size_t>& null_indices() const { return null_index_; }

  /// Every agent on its null action.
  JointAction null_profile() const;

  /// Number of joint actions, saturating at UINT64_MAX.
  std::uint64_t profile_count() const;

  std::optional<ResourceIndex> find_resource(const std::string& id) const;

  /// Throws InvalidInputError unless `a` has one in-range index per agent.
  void validate(const JointAction& a) const;

 private:
  std::vector<Resource<T>> resources_;
  std::vector<std::vector<Action>> action_sets_;
  std::vector<std::size_t> null_index_;
};

/// Designable per-resource payoff schedule f(1..n_max).
template <typename T>
class UtilityRule {
 public:
  UtilityRule(std::string name, std::vector<T> values);

  /// f(j) for 1 <= j <= n_max; f(0) is 0. Throws CapacityError beyond n_max.
  T operator()(std::size_t j) const;

  std::size_t n_max() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  const std::string& name() const { return name_; }

  bool is_nonincreasing() const;

 private:
  std::string name_;
  std::vector<T> values_;
};

UtilityRule<Rational> to_rational(const UtilityRule<double>& rule);
UtilityRule<double> to_double(const UtilityRule<Rational>& rule);

/// f / f(1); leaves every efficiency ratio unchanged. Throws InvalidRuleError when f(1) = 0.
template <typename T>
UtilityRule<T> normalized(const UtilityRule<T>& rule);

template <typename T>
UtilityRule<T> scaled(const UtilityRule<T>& rule, const T& divisor);

/// |a|_r for every resource.
template <typename T>
std::vector<std::uint32_t> coverage(const SetCoveringGame<T>& game, const JointAction& a);

template <typename T>
std::uint32_t coverage_count(const SetCoveringGame<T>& game, const JointAction& a, ResourceIndex r);

template <typename T>
std::uint32_t coverage_count(const SetCoveringGame<T>& game, const JointAction& a, const std::string& resource_id);

/// Total value of the union of covered resources.
template <typename T>
T welfare(const SetCoveringGame<T>& game, const JointAction& a);

/// U_i(a) = sum over r in a_i of v_r * f(|a|_r).
template <typename T>
T utility(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t agent, const JointAction& a);

/// Rosenthal potential sum_r v_r sum_{l <= |a|_r} f(l).
template <typename T>
T potential(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, const JointAction& a);

template <typename T>
struct OptimalWelfare {
  T value;
  JointAction profile;
};

/// Exhaustive maximiser; ties go to the lexicographically smallest index vector.
template <typename T>
OptimalWelfare<T> optimal_welfare(const SetCoveringGame<T>& game, std::uint64_t cap = kDefaultProfileCap);

/// Visits every joint action in lexicographic order. Throws ResourceLimitError above `cap`.
template <typename T>
void for_each_profile(const SetCoveringGame<T>& game, std::uint64_t cap,
                      const std::function<void(const JointAction&)>& visit);

}  // namespace scg
