#include "scg/game.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "scg/error.hpp"

namespace scg {

std::size_t JointActionHash::operator()(const JointAction& a) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto c : a.choices) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

template <typename T>
SetCoveringGame<T>::SetCoveringGame(std::vector<Resource<T>> resources,
                                    std::vector<std::vector<Action>> action_sets,
                                    std::vector<std::size_t> null_index)
    : resources_(std::move(resources)), action_sets_(std::move(action_sets)), null_index_(std::move(null_index)) {
  if (action_sets_.empty()) throw InvalidInputError("a game needs at least one agent");
  if (null_index_.size() != action_sets_.size()) {
    throw InvalidInputError("null_index must list one entry per agent");
  }
  std::unordered_set<std::string> ids;
  for (const auto& r : resources_) {
    if (r.value < 0) throw InvalidInputError("resource '" + r.id + "' has a negative value");
    if (!ids.insert(r.id).second) throw InvalidInputError("duplicate resource id '" + r.id + "'");
  }
  for (std::size_t i = 0; i < action_sets_.size(); ++i) {
    auto& set = action_sets_[i];
    if (set.empty()) throw InvalidInputError("agent " + std::to_string(i) + " has no actions");
    for (auto& act : set) {
      std::sort(act.begin(), act.end());
      act.erase(std::unique(act.begin(), act.end()), act.end());
      if (!act.empty() && act.back() >= resources_.size()) {
        throw InvalidInputError("agent " + std::to_string(i) + " references an unknown resource");
      }
    }
    if (null_index_[i] >= set.size() || !set[null_index_[i]].empty()) {
      throw InvalidInputError("agent " + std::to_string(i) + " has no empty action at its null_index");
    }
  }
}

template <typename T>
JointAction SetCoveringGame<T>::null_profile() const {
  JointAction a;
  a.choices.reserve(null_index_.size());
  for (auto k : null_index_) a.choices.push_back(static_cast<std::uint32_t>(k));
  return a;
}

template <typename T>
std::uint64_t SetCoveringGame<T>::profile_count() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const auto& set : action_sets_) {
    if (total > kMax / set.size()) return kMax;
    total *= set.size();
  }
  return total;
}

template <typename T>
std::optional<ResourceIndex> SetCoveringGame<T>::find_resource(const std::string& id) const {
  for (std::size_t r = 0; r < resources_.size(); ++r) {
    if (resources_[r].id == id) return r;
  }
  return std::nullopt;
}

template <typename T>
void SetCoveringGame<T>::validate(const JointAction& a) const {
  if (a.size() != num_agents()) {
    throw InvalidInputError("joint action has " + std::to_string(a.size()) + " entries for " +
                            std::to_string(num_agents()) + " agents");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= action_sets_[i].size()) {
      throw InvalidInputError("action index out of range for agent " + std::to_string(i));
    }
  }
}

template <typename T>
UtilityRule<T>::UtilityRule(std::string name, std::vector<T> values)
    : name_(std::move(name)), values_(std::move(values)) {
  if (values_.empty()) throw InvalidRuleError("a utility rule needs at least f(1)");
  for (const auto& v : values_) {
    if (v < 0) throw InvalidRuleError("utility rule '" + name_ + "' has a negative value");
  }
}

template <typename T>
T UtilityRule<T>::operator()(std::size_t j) const {
  if (j == 0) return T(0);
  if (j > values_.size()) {
    throw CapacityError("coverage " + std::to_string(j) + " exceeds n_max = " + std::to_string(values_.size()) +
                        " of rule '" + name_ + "'");
  }
  return values_[j - 1];
}

template <typename T>
bool UtilityRule<T>::is_nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

UtilityRule<Rational> to_rational(const UtilityRule<double>& rule) {
  std::vector<Rational> values;
  values.reserve(rule.n_max());
  for (double v : rule.values()) values.emplace_back(v);
  return UtilityRule<Rational>(rule.name(), std::move(values));
}

UtilityRule<double> to_double(const UtilityRule<Rational>& rule) {
  std::vector<double> values;
  values.reserve(rule.n_max());
  for (const auto& v : rule.values()) values.push_back(to_double(v));
  return UtilityRule<double>(rule.name(), std::move(values));
}

template <typename T>
UtilityRule<T> scaled(const UtilityRule<T>& rule, const T& divisor) {
  if (!(divisor > 0)) throw DomainError("scaling divisor must be positive");
  std::vector<T> values;
  values.reserve(rule.n_max());
  for (const auto& v : rule.values()) values.push_back(T(v / divisor));
  return UtilityRule<T>(rule.name(), std::move(values));
}

template <typename T>
UtilityRule<T> normalized(const UtilityRule<T>& rule) {
  if (!(rule(1) > 0)) throw InvalidRuleError("rule '" + rule.name() + "' has f(1) = 0");
  return scaled(rule, rule(1));
}

template <typename T>
std::vector<std::uint32_t> coverage(const SetCoveringGame<T>& game, const JointAction& a) {
  game.validate(a);
  std::vector<std::uint32_t> counts(game.num_resources(), 0);
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    for (auto r : game.action(i, a[i])) ++counts[r];
  }
  return counts;
}

template <typename T>
std::uint32_t coverage_count(const SetCoveringGame<T>& game, const JointAction& a, ResourceIndex r) {
  if (r >= game.num_resources()) throw InvalidInputError("unknown resource index " + std::to_string(r));
  game.validate(a);
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    const auto& act = game.action(i, a[i]);
    if (std::binary_search(act.begin(), act.end(), r)) ++count;
  }
  return count;
}

template <typename T>
std::uint32_t coverage_count(const SetCoveringGame<T>& game, const JointAction& a, const std::string& resource_id) {
  auto r = game.find_resource(resource_id);
  if (!r) throw InvalidInputError("unknown resource id '" + resource_id + "'");
  return coverage_count(game, a, *r);
}

template <typename T>
T welfare(const SetCoveringGame<T>& game, const JointAction& a) {
  auto counts = coverage(game, a);
  T total(0);
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (counts[r] > 0) total += game.value(r);
  }
  return total;
}

template <typename T>
T utility(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t agent, const JointAction& a) {
  auto counts = coverage(game, a);
  T total(0);
  for (auto r : game.action(agent, a[agent])) total += game.value(r) * rule(counts[r]);
  return total;
}

template <typename T>
T potential(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, const JointAction& a) {
  auto counts = coverage(game, a);
  T total(0);
  for (std::size_t r = 0; r < counts.size(); ++r) {
    T cumulative(0);
    for (std::uint32_t l = 1; l <= counts[r]; ++l) cumulative += rule(l);
    total += game.value(r) * cumulative;
  }
  return total;
}

template <typename T>
void for_each_profile(const SetCoveringGame<T>& game, std::uint64_t cap,
                      const std::function<void(const JointAction&)>& visit) {
  std::uint64_t count = game.profile_count();
  if (count > cap) {
    throw ResourceLimitError("joint action space has " + std::to_string(count) + " profiles, cap is " +
                             std::to_string(cap));
  }
  const std::size_t n = game.num_agents();
  JointAction a;
  a.choices.assign(n, 0);
  while (true) {
    visit(a);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++a[i] < game.actions(i).size()) break;
      a[i] = 0;
      if (i == 0) return;
    }
  }
}

template <typename T>
OptimalWelfare<T> optimal_welfare(const SetCoveringGame<T>& game, std::uint64_t cap) {
  OptimalWelfare<T> best{T(-1), {}};
  std::vector<char> covered(game.num_resources());
  for_each_profile(game, cap, [&](const JointAction& a) {
    std::fill(covered.begin(), covered.end(), 0);
    T w(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (auto r : game.action(i, a[i])) {
        if (!covered[r]) {
          covered[r] = 1;
          w += game.value(r);
        }
      }
    }
    if (w > best.value) {
      best.value = w;
      best.profile = a;
    }
  });
  return best;
}

#define SCG_INSTANTIATE(T)                                                                                      \
  template class SetCoveringGame<T>;                                                                            \
  template class UtilityRule<T>;                                                                                \
  template UtilityRule<T> normalized(const UtilityRule<T>&);                                                    \
  template UtilityRule<T> scaled(const UtilityRule<T>&, const T&);                                              \
  template std::vector<std::uint32_t> coverage(const SetCoveringGame<T>&, const JointAction&);                  \
  template std::uint32_t coverage_count(const SetCoveringGame<T>&, const JointAction&, ResourceIndex);          \
  template std::uint32_t coverage_count(const SetCoveringGame<T>&, const JointAction&, const std::string&);     \
  template T welfare(const SetCoveringGame<T>&, const JointAction&);                                            \
  template T utility(const SetCoveringGame<T>&, const UtilityRule<T>&, std::size_t, const JointAction&);        \
  template T potential(const SetCoveringGame<T>&, const UtilityRule<T>&, const JointAction&);                   \
  template OptimalWelfare<T> optimal_welfare(const SetCoveringGame<T>&, std::uint64_t);                         \
  template void for_each_profile(const SetCoveringGame<T>&, std::uint64_t,                                      \
                                 const std::function<void(const JointAction&)>&);

SCG_INSTANTIATE(double)
SCG_INSTANTIATE(Rational)

#undef SCG_INSTANTIATE

}  // namespace scg
