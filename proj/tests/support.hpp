#pragma once

#include <random>
#include <string>
#include <vector>

#include "scg/game.hpp"
#include "scg/numeric.hpp"
#include "scg/rules.hpp"

namespace scg::testing {

// mpq_class(num, den) leaves the fraction as given; comparisons need canonical form.
inline Rational q(long num, long den) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

inline UtilityRule<Rational> constant_rule(std::size_t n_max) {
  return UtilityRule<Rational>("one", std::vector<Rational>(n_max, Rational(1)));
}

inline UtilityRule<Rational> poa_rule_exact(std::size_t n_max) { return to_rational(poa_optimal_rule(n_max)); }

// f(1) = 1, each later value a random fraction (in sixteenths) of the previous one.
inline UtilityRule<Rational> random_nonincreasing_rule(std::mt19937_64& rng, std::size_t n_max) {
  std::uniform_int_distribution<int> num(0, 16);
  std::vector<Rational> values{Rational(1)};
  for (std::size_t j = 1; j < n_max; ++j) {
    values.push_back(values.back() * q(num(rng), 16));
  }
  return UtilityRule<Rational>("random", std::move(values));
}

// Named rules used across the rational batteries.
inline std::vector<UtilityRule<Rational>> named_rules(std::size_t n_max) {
  return {mc_rule<Rational>(n_max), constant_rule(n_max), pareto_rule_exact(q(4, 5), n_max),
          pareto_rule_exact(q(9, 10), n_max), pareto_rule_exact(Rational(1), n_max), poa_rule_exact(n_max)};
}

// Up to three resources with values in quarters, every agent has null plus one or two
// random nonempty subsets.
template <typename T>
SetCoveringGame<T> random_small_game(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> resource_count(1, 3);
  std::uniform_int_distribution<int> quarter(0, 4);
  std::uniform_int_distribution<int> extra(1, 2);
  const auto m = static_cast<std::size_t>(resource_count(rng));
  std::vector<Resource<T>> resources;
  for (std::size_t r = 0; r < m; ++r) {
    resources.push_back({"r" + std::to_string(r + 1), ScalarTraits<T>::from_rational(q(quarter(rng), 4))});
  }
  std::uniform_int_distribution<unsigned> mask(1, (1u << m) - 1);
  std::vector<std::vector<Action>> sets;
  std::vector<std::size_t> nulls;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Action> acts{{}};
    for (int t = extra(rng); t > 0; --t) {
      Action a;
      const unsigned bits = mask(rng);
      for (std::size_t r = 0; r < m; ++r) {
        if (bits & (1u << r)) a.push_back(r);
      }
      acts.push_back(a);
    }
    sets.push_back(acts);
    nulls.push_back(0);
  }
  return SetCoveringGame<T>(std::move(resources), std::move(sets), std::move(nulls));
}

}  // namespace scg::testing
