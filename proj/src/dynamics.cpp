#include "scg/dynamics.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <unordered_map>

#include "scg/error.hpp"
#include "scg/rules.hpp"

namespace scg {

TiePolicy parse_tie_policy(const std::string& name) {
  if (name == "enumerate-all") return TiePolicy::EnumerateAll;
  if (name == "lowest-action-index") return TiePolicy::LowestActionIndex;
  if (name == "prefer-stay") return TiePolicy::PreferStay;
  if (name == "seeded-random") return TiePolicy::SeededRandom;
  throw InvalidInputError("unknown tie policy '" + name +
                          "' (expected enumerate-all, lowest-action-index, prefer-stay or seeded-random)");
}

std::string to_string(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::EnumerateAll: return "enumerate-all";
    case TiePolicy::LowestActionIndex: return "lowest-action-index";
    case TiePolicy::PreferStay: return "prefer-stay";
    case TiePolicy::SeededRandom: return "seeded-random";
  }
  return "unknown";
}

namespace {

// Best responses of `agent`, whose current action is `current`, given full coverage counts.
// `counts` is restored before returning.
template <typename T>
std::vector<std::uint32_t> best_responses_from_counts(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                                      std::size_t agent, std::uint32_t current,
                                                      std::vector<std::uint32_t>& counts) {
  for (auto r : game.action(agent, current)) --counts[r];
  std::vector<std::uint32_t> best;
  T best_value(0);
  const auto& actions = game.actions(agent);
  for (std::uint32_t b = 0; b < actions.size(); ++b) {
    T u(0);
    for (auto r : actions[b]) u += game.value(r) * rule(counts[r] + 1);
    if (best.empty() || u > best_value) {
      best_value = u;
      best.assign(1, b);
    } else if (u == best_value) {
      best.push_back(b);
    }
  }
  for (auto r : game.action(agent, current)) ++counts[r];
  return best;
}

template <typename T>
T welfare_from_counts(const SetCoveringGame<T>& game, const std::vector<std::uint32_t>& counts) {
  T total(0);
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (counts[r] > 0) total += game.value(r);
  }
  return total;
}

template <typename T>
T potential_from_counts(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                        const std::vector<std::uint32_t>& counts) {
  T total(0);
  for (std::size_t r = 0; r < counts.size(); ++r) {
    T cumulative(0);
    for (std::uint32_t l = 1; l <= counts[r]; ++l) cumulative += rule(l);
    total += game.value(r) * cumulative;
  }
  return total;
}

template <typename T>
void move(const SetCoveringGame<T>& game, std::size_t agent, JointAction& a, std::uint32_t next,
          std::vector<std::uint32_t>& counts) {
  for (auto r : game.action(agent, a[agent])) --counts[r];
  a[agent] = next;
  for (auto r : game.action(agent, next)) ++counts[r];
}

struct Node {
  JointAction profile;
  std::uint32_t parent;
  std::uint32_t action;
};

// Breadth-first expansion of the best-response tree, one layer per step, with
// identical profiles merged inside each layer. Layer m holds every profile
// reachable after m steps. Only the last layer is kept unless `keep_layers`.
template <typename T>
std::vector<std::vector<Node>> explore(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                                       std::uint64_t cap, Execution exec, bool keep_layers) {
  if (k < 1) throw DomainError("the number of rounds k must be at least 1");
  const std::size_t n = game.num_agents();
  std::vector<std::vector<Node>> layers;
  layers.push_back({Node{game.null_profile(), 0, 0}});

  for (std::size_t step = 0; step < n * k; ++step) {
    const std::size_t agent = step % n;
    const auto& frontier = layers.back();
    const auto count = static_cast<std::int64_t>(frontier.size());
    std::vector<std::vector<std::uint32_t>> responses(frontier.size());
    std::exception_ptr failure;

    auto expand = [&](std::int64_t p) {
      const auto& profile = frontier[static_cast<std::size_t>(p)].profile;
      auto counts = coverage(game, profile);
      responses[static_cast<std::size_t>(p)] =
          best_responses_from_counts(game, rule, agent, profile[agent], counts);
    };

    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) if (count > 256)
      for (std::int64_t p = 0; p < count; ++p) {
        try {
          expand(p);
        } catch (...) {
#pragma omp critical(scg_explore_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::int64_t p = 0; p < count; ++p) expand(p);
    }

    std::vector<Node> next;
    std::unordered_map<JointAction, std::uint32_t, JointActionHash> seen;
    for (std::size_t p = 0; p < frontier.size(); ++p) {
      for (auto b : responses[p]) {
        JointAction child = frontier[p].profile;
        child[agent] = b;
        if (seen.emplace(child, static_cast<std::uint32_t>(next.size())).second) {
          if (next.size() >= cap) {
            throw ResourceLimitError("best-response tree exceeds " + std::to_string(cap) +
                                     " distinct profiles at step " + std::to_string(step + 1));
          }
          next.push_back(Node{std::move(child), static_cast<std::uint32_t>(p), b});
        }
      }
    }
    if (!keep_layers) layers.clear();
    layers.push_back(std::move(next));
  }
  return layers;
}

}  // namespace

template <typename T>
std::vector<std::uint32_t> best_responses(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                          std::size_t agent, const JointAction& a) {
  if (agent >= game.num_agents()) throw InvalidInputError("agent index out of range");
  auto counts = coverage(game, a);
  return best_responses_from_counts(game, rule, agent, a[agent], counts);
}

template <typename T>
Trajectory<T> run_round(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                        TiePolicy policy, std::uint64_t seed) {
  if (policy == TiePolicy::EnumerateAll) {
    throw PreconditionError("run_round samples one path; use enumerate_end_states for enumerate-all");
  }
  if (k < 1) throw DomainError("the number of rounds k must be at least 1");
  std::mt19937_64 rng(seed);
  const std::size_t n = game.num_agents();
  Trajectory<T> out;
  out.start = game.null_profile();
  JointAction a = out.start;
  auto counts = coverage(game, a);
  out.steps.reserve(n * k);
  for (std::size_t step = 0; step < n * k; ++step) {
    const std::size_t agent = step % n;
    auto br = best_responses_from_counts(game, rule, agent, a[agent], counts);
    std::uint32_t choice = br.front();
    switch (policy) {
      case TiePolicy::PreferStay:
        if (std::binary_search(br.begin(), br.end(), a[agent])) choice = a[agent];
        break;
      case TiePolicy::SeededRandom:
        if (br.size() > 1) {
          std::uniform_int_distribution<std::size_t> pick(0, br.size() - 1);
          choice = br[pick(rng)];
        }
        break;
      default:
        break;
    }
    move(game, agent, a, choice, counts);
    out.steps.push_back(
        {step, agent, choice, welfare_from_counts(game, counts), potential_from_counts(game, rule, counts)});
  }
  out.end = a;
  return out;
}

template <typename T>
std::vector<JointAction> enumerate_end_states(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                              std::size_t k, std::uint64_t cap, Execution exec) {
  auto layers = explore(game, rule, k, cap, exec, false);
  std::vector<JointAction> out;
  out.reserve(layers.back().size());
  for (auto& node : layers.back()) out.push_back(std::move(node.profile));
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
Trajectory<T> witness_trajectory(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                                 const JointAction& target, std::uint64_t cap) {
  game.validate(target);
  auto layers = explore(game, rule, k, cap, Execution::Serial, true);
  const auto& last = layers.back();
  auto it = std::find_if(last.begin(), last.end(), [&](const Node& node) { return node.profile == target; });
  if (it == last.end()) throw InvalidInputError("profile is not a k-round end state");

  std::vector<std::uint32_t> path(layers.size() - 1);
  std::uint32_t index = static_cast<std::uint32_t>(it - last.begin());
  for (std::size_t m = layers.size() - 1; m > 0; --m) {
    path[m - 1] = layers[m][index].action;
    index = layers[m][index].parent;
  }

  const std::size_t n = game.num_agents();
  Trajectory<T> out;
  out.start = game.null_profile();
  JointAction a = out.start;
  auto counts = coverage(game, a);
  for (std::size_t step = 0; step < path.size(); ++step) {
    move(game, step % n, a, path[step], counts);
    out.steps.push_back({step, step % n, path[step], welfare_from_counts(game, counts),
                         potential_from_counts(game, rule, counts)});
  }
  out.end = a;
  return out;
}

template <typename T>
EfficiencyReport<T> empirical_pob(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k,
                                  std::uint64_t cap, Execution exec) {
  auto opt = optimal_welfare(game);
  if (opt.value == 0) throw UndefinedRatioError("optimal welfare is zero; PoB is undefined");
  auto ends = enumerate_end_states(game, rule, k, cap, exec);
  EfficiencyReport<T> report;
  std::optional<T> worst;
  for (const auto& end : ends) {
    T w = welfare(game, end);
    if (!worst || w < *worst) {
      worst = w;
      report.witness_end = end;
    }
  }
  report.pob_empirical = T(*worst / opt.value);
  report.witness_opt = opt.profile;
  report.k = k;
  report.n = game.num_agents();
  report.end_state_count = ends.size();
  if (k == 1 && report.n >= 2 && report.n <= rule.n_max() && rule(1) > 0) {
    report.pob_formula = pob_one_round(rule, report.n);
  }
  return report;
}

template <typename T>
bool is_nash(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, const JointAction& a) {
  auto counts = coverage(game, a);
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    auto br = best_responses_from_counts(game, rule, i, a[i], counts);
    if (!std::binary_search(br.begin(), br.end(), a[i])) return false;
  }
  return true;
}

template <typename T>
std::vector<JointAction> nash_equilibria(const SetCoveringGame<T>& game, const UtilityRule<T>& rule,
                                         std::uint64_t cap) {
  std::vector<JointAction> out;
  for_each_profile(game, cap, [&](const JointAction& a) {
    if (is_nash(game, rule, a)) out.push_back(a);
  });
  return out;
}

template <typename T>
T empirical_poa(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::uint64_t cap) {
  auto opt = optimal_welfare(game, cap);
  if (opt.value == 0) throw UndefinedRatioError("optimal welfare is zero; PoA is undefined");
  auto equilibria = nash_equilibria(game, rule, cap);
  if (equilibria.empty()) throw InternalError("no pure Nash equilibrium found in a potential game");
  std::optional<T> worst;
  for (const auto& a : equilibria) {
    T w = welfare(game, a);
    if (!worst || w < *worst) worst = w;
  }
  return T(*worst / opt.value);
}

template <typename T>
EfficiencyReport<T> efficiency_report(const SetCoveringGame<T>& game, const UtilityRule<T>& rule, std::size_t k) {
  auto report = empirical_pob(game, rule, k);
  report.poa_empirical = empirical_poa(game, rule);
  if (report.n >= 2 && report.n <= rule.n_max() && rule(1) > 0) report.poa_formula = poa_value(rule, report.n);
  return report;
}

#define SCG_INSTANTIATE(T)                                                                                        \
  template std::vector<std::uint32_t> best_responses(const SetCoveringGame<T>&, const UtilityRule<T>&,            \
                                                     std::size_t, const JointAction&);                            \
  template Trajectory<T> run_round(const SetCoveringGame<T>&, const UtilityRule<T>&, std::size_t, TiePolicy,      \
                                   std::uint64_t);                                                                \
  template std::vector<JointAction> enumerate_end_states(const SetCoveringGame<T>&, const UtilityRule<T>&,        \
                                                         std::size_t, std::uint64_t, Execution);                  \
  template Trajectory<T> witness_trajectory(const SetCoveringGame<T>&, const UtilityRule<T>&, std::size_t,        \
                                            const JointAction&, std::uint64_t);                                   \
  template EfficiencyReport<T> empirical_pob(const SetCoveringGame<T>&, const UtilityRule<T>&, std::size_t,       \
                                             std::uint64_t, Execution);                                                    \
  template bool is_nash(const SetCoveringGame<T>&, const UtilityRule<T>&, const JointAction&);                    \
  template std::vector<JointAction> nash_equilibria(const SetCoveringGame<T>&, const UtilityRule<T>&,             \
                                                    std::uint64_t);                                               \
  template T empirical_poa(const SetCoveringGame<T>&, const UtilityRule<T>&, std::uint64_t);                      \
  template EfficiencyReport<T> efficiency_report(const SetCoveringGame<T>&, const UtilityRule<T>&, std::size_t);

SCG_INSTANTIATE(double)
SCG_INSTANTIATE(Rational)

#undef SCG_INSTANTIATE

}  // namespace scg
