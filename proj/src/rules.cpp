#include "scg/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scg/error.hpp"

namespace scg {

namespace {

template <typename T>
void require_rule_range(const UtilityRule<T>& rule, std::size_t n) {
  if (n < 2) throw DomainError("efficiency formulas need n >= 2 agents");
  if (n > rule.n_max()) {
    throw CapacityError("rule '" + rule.name() + "' defines f only up to " + std::to_string(rule.n_max()) +
                        ", n = " + std::to_string(n) + " requested");
  }
  if (!(rule(1) > 0)) throw InvalidRuleError("rule '" + rule.name() + "' has f(1) = 0");
}

std::string pareto_name(const std::optional<Rational>& x) {
  return x ? "pareto:X=" + to_string(*x) : std::string("pareto:X=1/(e-1)");
}

}  // namespace

template <typename T>
UtilityRule<T> mc_rule(std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  std::vector<T> values(n_max, T(0));
  values[0] = T(1);
  return UtilityRule<T>("mc", std::move(values));
}

UtilityRule<double> poa_optimal_rule(std::size_t n_max, double tol) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (!(tol > 0)) throw DomainError("truncation tolerance must be positive");
  const double inv_e_minus_1 = 1.0 / (std::numbers::e - 1.0);
  std::vector<double> values(n_max);
  for (std::size_t j = 1; j <= n_max; ++j) {
    // (j-1)!/l! = 1 / (j (j+1) ... l), accumulated as a running product of positive terms.
    double term = 1.0 / static_cast<double>(j);
    double sum = term;
    for (std::size_t l = j + 1;; ++l) {
      term /= static_cast<double>(l);
      if (term < tol * sum) break;
      sum += term;
    }
    values[j - 1] = sum * inv_e_minus_1;
  }
  const double f1 = values[0];
  for (auto& v : values) v /= f1;
  return UtilityRule<double>("poa-opt", std::move(values));
}

ParetoParameter ParetoParameter::from_x(const Rational& x) {
  if (x < 0) throw DomainError("Pareto slack X must be nonnegative");
  return ParetoParameter(make_high(x), x);
}

ParetoParameter ParetoParameter::from_c(const Rational& c) {
  if (c <= 0 || c > 1) throw DomainError("PoA target C must lie in (0, 1]");
  Rational x = (1 - c) / c;
  return from_x(x);
}

ParetoParameter ParetoParameter::from_c(double c) {
  if (!std::isfinite(c)) throw DomainError("PoA target C must be finite");
  return from_c(Rational(c));
}

ParetoParameter ParetoParameter::poa_optimal() {
  HighPrecision one(1, kHighPrecisionBits);
  HighPrecision x(0, kHighPrecisionBits);
  x = one / (euler_e() - one);
  return ParetoParameter(std::move(x), std::nullopt);
}

double ParetoParameter::c() const {
  HighPrecision one(1, kHighPrecisionBits);
  HighPrecision c(0, kHighPrecisionBits);
  c = one / (one + x_);
  return to_double(c);
}

UtilityRule<Rational> pareto_rule_exact(const Rational& x, std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (x < 0) throw DomainError("Pareto slack X must be nonnegative");
  std::vector<Rational> values(n_max, Rational(0));
  Rational factorial(1);       // (j-1)!
  Rational inv_factorial(1);   // 1/(j-1)!
  Rational partial(0);         // sum_{t=1}^{j-1} 1/t!
  for (std::size_t j = 1; j <= n_max; ++j) {
    Rational v = factorial * (1 - x * partial);
    if (v <= 0) break;
    values[j - 1] = v;
    inv_factorial /= static_cast<unsigned long>(j);
    partial += inv_factorial;
    factorial *= static_cast<unsigned long>(j);
  }
  return UtilityRule<Rational>(pareto_name(x), std::move(values));
}

UtilityRule<double> pareto_rule(const ParetoParameter& p, std::size_t n_max) {
  if (p.exact_x()) {
    auto exact = pareto_rule_exact(*p.exact_x(), n_max);
    return to_double(exact);
  }
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  // Cancellation in (1 - X * partial) is amplified by (j-1)!; the working precision
  // covers log2((n_max-1)!) with a wide margin only up to roughly 150 terms.
  if (n_max > 150) throw ResourceLimitError("irrational Pareto slack supports n_max <= 150");
  std::vector<double> values(n_max, 0.0);
  const HighPrecision& x = p.x();
  HighPrecision factorial(1, kHighPrecisionBits);
  HighPrecision inv_factorial(1, kHighPrecisionBits);
  HighPrecision partial(0, kHighPrecisionBits);
  HighPrecision v(0, kHighPrecisionBits);
  for (std::size_t j = 1; j <= n_max; ++j) {
    v = factorial * (1 - x * partial);
    if (v <= 0) break;
    values[j - 1] = to_double(v);
    inv_factorial /= static_cast<unsigned long>(j);
    partial += inv_factorial;
    factorial *= static_cast<unsigned long>(j);
  }
  return UtilityRule<double>(pareto_name(p.exact_x()), std::move(values));
}

template <typename T>
UtilityRule<T> pareto_rule_recursive(const T& x, std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (x < 0) throw DomainError("Pareto slack X must be nonnegative");
  std::vector<T> values(n_max);
  values[0] = T(1);
  for (std::size_t j = 1; j < n_max; ++j) {
    T next = T(static_cast<double>(j) * values[j - 1] - x);
    values[j] = next > 0 ? next : T(0);
  }
  return UtilityRule<T>("pareto-recursive", std::move(values));
}

template <typename T>
T pob_one_round(const UtilityRule<T>& rule, std::size_t n) {
  require_rule_range(rule, n);
  T sum(0);
  T minimum = rule(1);
  for (std::size_t j = 1; j <= n; ++j) {
    T f = rule(j);
    sum += f;
    if (f < minimum) minimum = f;
  }
  const T f1 = rule(1);
  return T(f1 / (sum - minimum + f1));
}

template <typename T>
T poa_value(const UtilityRule<T>& rule, std::size_t n) {
  require_rule_range(rule, n);
  const T f1 = rule(1);
  T worst(0);
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    const T fj = rule(j);
    const T fnext = rule(j + 1);
    const T jj(static_cast<double>(j));
    const T candidates[] = {T((jj + 1) * fnext - f1), T(jj * fj - fnext), T(jj * fnext)};
    for (const auto& c : candidates) {
      if (c > worst) worst = c;
    }
  }
  return T(f1 / (f1 + worst));
}

template <typename T>
T poa_value_nonincreasing(const UtilityRule<T>& rule, std::size_t n) {
  require_rule_range(rule, n);
  if (rule(1) != 1) throw PreconditionError("reduced PoA formula needs f(1) = 1");
  for (std::size_t j = 1; j < n; ++j) {
    if (rule(j + 1) > rule(j)) throw PreconditionError("reduced PoA formula needs a non-increasing rule");
  }
  T worst = T(static_cast<double>(n - 1) * rule(n));
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    T term = T(static_cast<double>(j) * rule(j) - rule(j + 1));
    if (term > worst) worst = term;
  }
  return T(1 / (1 + worst));
}

double poa_upper_limit() { return 1.0 - 1.0 / std::numbers::e; }

FrontierPoint frontier_point(double c) {
  const double upper = poa_upper_limit();
  if (!std::isfinite(c) || c < 0.5 || c > upper + kFrontierEndpointSnap) {
    throw DomainError("PoA target C must lie in [1/2, 1 - 1/e] = [0.5, " + to_string(upper) + "]");
  }
  if (c >= upper - kFrontierEndpointSnap) return {c, 0.0};

  // The j-th series term equals f^X(j+1); it turns nonpositive at a finite j because X > 1/(e-1).
  const Rational cq(c);
  const Rational x = (1 - cq) / cq;
  Rational total(1);  // j = 0 term
  Rational factorial(1);
  Rational inv_factorial(1);
  Rational partial(0);
  for (unsigned long j = 1;; ++j) {
    if (j > 10000) throw InternalError("frontier series failed to terminate");
    factorial *= j;
    inv_factorial /= j;
    partial += inv_factorial;
    Rational term = factorial * (1 - x * partial);
    if (term <= 0) break;
    total += term;
  }
  Rational pob = 1 / (total + 1);
  return {c, to_double(pob)};
}

std::vector<FrontierPoint> frontier_sweep(const std::vector<double>& grid) {
  std::vector<FrontierPoint> points;
  points.reserve(grid.size());
  for (double c : grid) points.push_back(frontier_point(c));
  return points;
}

std::vector<double> frontier_grid(std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {0.5};
  const double upper = poa_upper_limit();
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = 0.5 + (upper - 0.5) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = upper;
  return grid;
}

template UtilityRule<double> mc_rule(std::size_t);
template UtilityRule<Rational> mc_rule(std::size_t);
template UtilityRule<double> pareto_rule_recursive(const double&, std::size_t);
template UtilityRule<Rational> pareto_rule_recursive(const Rational&, std::size_t);
template double pob_one_round(const UtilityRule<double>&, std::size_t);
template Rational pob_one_round(const UtilityRule<Rational>&, std::size_t);
template double poa_value(const UtilityRule<double>&, std::size_t);
template Rational poa_value(const UtilityRule<Rational>&, std::size_t);
template double poa_value_nonincreasing(const UtilityRule<double>&, std::size_t);
template Rational poa_value_nonincreasing(const UtilityRule<Rational>&, std::size_t);

}  // namespace scg
