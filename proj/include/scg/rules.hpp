#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scg/game.hpp"
#include "scg/numeric.hpp"

namespace scg {

/// Marginal contribution rule: f(1) = 1, f(j) = 0 for j >= 2.
template <typename T>
UtilityRule<T> mc_rule(std::size_t n_max);

/// The price-of-anarchy optimal rule, f(j) = sum_{l >= j} (j-1)! / (l! (e-1)), scaled so f(1) = 1 exactly.
/// Each tail sum stops once the next term falls below `tol` relative to the partial sum.
UtilityRule<double> poa_optimal_rule(std::size_t n_max, double tol = 1e-15);

/// Slack X of the Pareto-optimal rule family; the family member has PoA = 1/(1+X).
class ParetoParameter {
 public:
  static ParetoParameter from_x(const Rational& x);
  static ParetoParameter from_c(const Rational& c);
  static ParetoParameter from_c(double c);
  /// X = 1/(e-1), the PoA-optimal end of the frontier.
  static ParetoParameter poa_optimal();

  const HighPrecision& x() const { return x_; }
  /// Present when X is rational.
  const std::optional<Rational>& exact_x() const { return exact_x_; }
  /// PoA target C = 1/(1+X).
  double c() const;

 private:
  ParetoParameter(HighPrecision x, std::optional<Rational> exact) : x_(std::move(x)), exact_x_(std::move(exact)) {}

  HighPrecision x_;
  std::optional<Rational> exact_x_;
};

/// Pareto rule from the closed form f(j) = max[(j-1)! (1 - X sum_{t<j} 1/t!), 0],
/// evaluated in extended precision and rounded once to double.
UtilityRule<double> pareto_rule(const ParetoParameter& p, std::size_t n_max);

/// Exact closed form for rational X.
UtilityRule<Rational> pareto_rule_exact(const Rational& x, std::size_t n_max);

/// The raw recursion f(1) = 1, f(j+1) = max{j f(j) - X, 0}; kept for cross-checking the closed form.
template <typename T>
UtilityRule<T> pareto_rule_recursive(const T& x, std::size_t n_max);

/// 1-round price of best response: 1/PoB = (sum_{j<=n} f(j) - min_{j<=n} f(j)) / f(1) + 1.
template <typename T>
T pob_one_round(const UtilityRule<T>& rule, std::size_t n);

/// Price of anarchy for any rule:
/// 1/PoA = 1 + max_{1<=j<=n-1} {(j+1)f(j+1) - f(1), j f(j) - f(j+1), j f(j+1)} / f(1).
template <typename T>
T poa_value(const UtilityRule<T>& rule, std::size_t n);

/// Reduced form for non-increasing rules with f(1) = 1:
/// 1/PoA = 1 + max{ max_{j<=n-1} j f(j) - f(j+1), (n-1) f(n) }.
template <typename T>
T poa_value_nonincreasing(const UtilityRule<T>& rule, std::size_t n);

struct FrontierPoint {
  double poa;
  double pob;
};

/// 1 - 1/e, the largest achievable PoA.
double poa_upper_limit();

/// C values within this distance of 1 - 1/e are treated as the endpoint itself.
inline constexpr double kFrontierEndpointSnap = 1e-9;

/// Optimal 1-round PoB subject to PoA = C, for C in [1/2, 1 - 1/e].
FrontierPoint frontier_point(double c);
std::vector<FrontierPoint> frontier_sweep(const std::vector<double>& grid);

/// `count` evenly spaced values on [1/2, 1 - 1/e], both ends included.
std::vector<double> frontier_grid(std::size_t count);

}  // namespace scg
