#include "scg/constructions.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include "scg/error.hpp"
#include "scg/rules.hpp"

namespace scg {

template <typename T>
SetCoveringGame<T> worst_case_one_round(const UtilityRule<T>& rule, std::size_t n) {
  if (n < 2) throw DomainError("the worst-case construction needs n >= 2");
  if (n > rule.n_max()) throw CapacityError("rule does not define f(" + std::to_string(n) + ")");
  const T f1 = rule(1);
  if (!(f1 > 0)) throw InvalidRuleError("rule '" + rule.name() + "' has f(1) = 0");
  for (std::size_t j = 1; j < n; ++j) {
    if (rule(j) < rule(n)) {
      throw PreconditionError("worst-case construction needs min_{j<=n} f(j) at j = n; f(" + std::to_string(j) +
                              ") < f(" + std::to_string(n) + ")");
    }
  }
  std::vector<Resource<T>> resources{{"r1", T(1)}};
  std::vector<std::vector<Action>> actions;
  std::vector<std::size_t> null_index;
  for (std::size_t i = 1; i < n; ++i) {
    resources.push_back({"r" + std::to_string(i + 1), T(rule(i) / f1)});
    actions.push_back({{0}, {i}, {}});
    null_index.push_back(2);
  }
  actions.push_back({{0}, {}});
  null_index.push_back(1);
  return SetCoveringGame<T>(std::move(resources), std::move(actions), std::move(null_index));
}

template <typename T>
SetCoveringGame<T> build_gf(const UtilityRule<T>& rule, std::size_t n) {
  if (n < 2) throw DomainError("the G^f construction needs n >= 2");
  std::vector<Resource<T>> resources{{"r1", T(1)}, {"r2", T(1)}, {"r3", rule(2)}, {"r4", T(0)}};
  std::vector<std::vector<Action>> actions{{{}, {0}, {1}}, {{}, {2}, {0}}};
  for (std::size_t i = 2; i < n; ++i) actions.push_back({{}, {3}});
  std::vector<std::size_t> null_index(n, 0);
  return SetCoveringGame<T>(std::move(resources), std::move(actions), std::move(null_index));
}

template <typename T>
ConstructionReport<T> verify_worst_case(const UtilityRule<T>& rule, std::size_t n) {
  auto game = worst_case_one_round(rule, n);
  T predicted = pob_one_round(rule, n);
  auto report = empirical_pob(game, rule, 1);
  auto witness = witness_trajectory(game, rule, 1, report.witness_end);
  T achieved = report.pob_empirical;
  bool matched = predicted == achieved;
  return {std::move(game), std::move(predicted), std::move(achieved), matched, std::move(witness)};
}

template <typename T>
ConstructionReport<T> verify_gf(const UtilityRule<T>& rule, std::size_t n, std::size_t k) {
  auto game = build_gf(rule, n);
  T predicted = T(1) / T(2);
  auto report = empirical_pob(game, rule, k);
  auto witness = witness_trajectory(game, rule, k, report.witness_end);
  T achieved = report.pob_empirical;
  bool matched = predicted == achieved;
  return {std::move(game), std::move(predicted), std::move(achieved), matched, std::move(witness)};
}

template <typename T>
std::vector<T> default_value_grid(const UtilityRule<T>& rule) {
  std::vector<T> grid{T(0), rule(2), T(1) / T(2), T(1)};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

// All games with exactly `resources` resources.
struct Block {
  std::size_t resources;
  std::vector<std::vector<std::size_t>> value_sets;   // sorted grid indices
  std::vector<std::vector<std::uint32_t>> action_sets;  // nonempty masks, ascending
  std::uint64_t count = 0;
  std::uint64_t offset = 0;
};

void multisets(std::size_t grid, std::size_t length, std::vector<std::size_t>& current,
               std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == length) {
    out.push_back(current);
    return;
  }
  std::size_t from = current.empty() ? 0 : current.back();
  for (std::size_t g = from; g < grid; ++g) {
    current.push_back(g);
    multisets(grid, length, current, out);
    current.pop_back();
  }
}

void combinations(std::uint32_t first, std::uint32_t last, std::size_t max_size, std::vector<std::uint32_t>& current,
                  std::vector<std::vector<std::uint32_t>>& out) {
  out.push_back(current);
  if (current.size() == max_size) return;
  for (std::uint32_t m = first; m <= last; ++m) {
    current.push_back(m);
    combinations(m + 1, last, max_size, current, out);
    current.pop_back();
  }
}

template <typename T>
std::vector<Block> make_blocks(const GameFamily<T>& family, std::size_t grid_size) {
  std::vector<Block> blocks;
  std::uint64_t offset = 0;
  for (std::size_t r = 1; r <= family.max_resources; ++r) {
    Block block;
    block.resources = r;
    std::vector<std::size_t> scratch;
    multisets(grid_size, r, scratch, block.value_sets);
    std::vector<std::uint32_t> combo;
    combinations(1, (1u << r) - 1, family.max_actions, combo, block.action_sets);
    std::uint64_t count = block.value_sets.size();
    for (std::size_t i = 0; i < family.n; ++i) count = mul_sat(count, block.action_sets.size());
    block.count = count;
    block.offset = offset;
    offset = add_sat(offset, count);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

template <typename T>
void check_family(const GameFamily<T>& family) {
  if (family.n < 1) throw InvalidInputError("family needs n >= 1");
  if (family.max_resources < 1 || family.max_resources > 16) {
    throw InvalidInputError("family max_resources must lie in [1, 16]");
  }
  if (family.value_grid.empty()) throw InvalidInputError("family value grid is empty");
  for (const auto& v : family.value_grid) {
    if (v < 0) throw InvalidInputError("family value grid has a negative value");
  }
}

// Builds candidate `index`, or nothing when it is pruned.
template <typename T>
std::optional<SetCoveringGame<T>> decode(const GameFamily<T>& family, const std::vector<T>& grid,
                                         const std::vector<Block>& blocks, std::uint64_t index) {
  auto it = std::upper_bound(blocks.begin(), blocks.end(), index,
                             [](std::uint64_t i, const Block& b) { return i < b.offset; });
  const Block& block = *(it - 1);
  std::uint64_t local = index - block.offset;
  const auto& values = block.value_sets[local % block.value_sets.size()];
  local /= block.value_sets.size();

  std::vector<std::vector<std::uint32_t>> chosen(family.n);
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < family.n; ++i) {
    chosen[i] = block.action_sets[local % block.action_sets.size()];
    local /= block.action_sets.size();
    for (auto m : chosen[i]) used |= m;
  }
  if (used != (1u << block.resources) - 1) return std::nullopt;

  std::vector<Resource<T>> resources;
  for (std::size_t r = 0; r < block.resources; ++r) resources.push_back({"r" + std::to_string(r + 1), grid[values[r]]});
  std::vector<std::vector<Action>> actions(family.n);
  for (std::size_t i = 0; i < family.n; ++i) {
    actions[i].push_back({});
    for (auto m : chosen[i]) {
      Action act;
      for (std::size_t r = 0; r < block.resources; ++r) {
        if (m & (1u << r)) act.push_back(r);
      }
      actions[i].push_back(std::move(act));
    }
  }
  return SetCoveringGame<T>(std::move(resources), std::move(actions), std::vector<std::size_t>(family.n, 0));
}

template <typename T>
struct Best {
  std::optional<T> pob;
  std::uint64_t index = kSaturated;
  std::uint64_t evaluated = 0;

  void offer(const T& value, std::uint64_t i) {
    if (!pob || value < *pob || (value == *pob && i < index)) {
      pob = value;
      index = i;
    }
  }
  void merge(const Best& other) {
    evaluated += other.evaluated;
    if (other.pob) offer(*other.pob, other.index);
  }
};

}  // namespace

template <typename T>
std::uint64_t family_size(const GameFamily<T>& family) {
  check_family(family);
  auto grid = family.value_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto blocks = make_blocks(family, grid.size());
  return add_sat(blocks.back().offset, blocks.back().count);
}

template <typename T>
SearchResult<T> search_games(const GameFamily<T>& family, const UtilityRule<T>& rule, std::size_t k, Execution exec,
                             std::uint64_t cap) {
  check_family(family);
  if (rule.n_max() < family.n) throw CapacityError("rule n_max is below the family's agent count");
  auto grid = family.value_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  auto blocks = make_blocks(family, grid.size());
  const std::uint64_t total = add_sat(blocks.back().offset, blocks.back().count);
  if (total > cap) {
    throw ResourceLimitError("game family has " + std::to_string(total) + " candidates, cap is " +
                             std::to_string(cap));
  }

  auto evaluate = [&](std::uint64_t index, Best<T>& best) {
    auto game = decode(family, grid, blocks, index);
    if (!game) return;
    if (optimal_welfare(*game).value == 0) return;
    auto report = empirical_pob(*game, rule, k, kDefaultEndStateCap, Execution::Serial);
    ++best.evaluated;
    best.offer(report.pob_empirical, index);
  };

  Best<T> best;
  const auto count = static_cast<std::int64_t>(total);
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel
    {
      Best<T> local;
#pragma omp for schedule(dynamic, 512) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        try {
          evaluate(static_cast<std::uint64_t>(i), local);
        } catch (...) {
#pragma omp critical(scg_search_failure)
          if (!failure) failure = std::current_exception();
        }
      }
#pragma omp critical(scg_search_merge)
      best.merge(local);
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::int64_t i = 0; i < count; ++i) evaluate(static_cast<std::uint64_t>(i), best);
  }

  SearchResult<T> result;
  result.candidates = total;
  result.evaluated = best.evaluated;
  if (best.pob) {
    result.min_pob = best.pob;
    result.witness = decode(family, grid, blocks, best.index);
  }
  return result;
}

#define SCG_INSTANTIATE(T)                                                                                    \
  template SetCoveringGame<T> worst_case_one_round(const UtilityRule<T>&, std::size_t);                       \
  template SetCoveringGame<T> build_gf(const UtilityRule<T>&, std::size_t);                                   \
  template ConstructionReport<T> verify_worst_case(const UtilityRule<T>&, std::size_t);                       \
  template ConstructionReport<T> verify_gf(const UtilityRule<T>&, std::size_t, std::size_t);                  \
  template std::vector<T> default_value_grid(const UtilityRule<T>&);                                          \
  template std::uint64_t family_size(const GameFamily<T>&);                                                   \
  template SearchResult<T> search_games(const GameFamily<T>&, const UtilityRule<T>&, std::size_t, Execution,  \
                                        std::uint64_t);

SCG_INSTANTIATE(double)
SCG_INSTANTIATE(Rational)

#undef SCG_INSTANTIATE

}  // namespace scg
