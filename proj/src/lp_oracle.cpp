#include "scg/lp_oracle.hpp"

#include <bit>
#include <ostream>

#include "scg/error.hpp"

namespace scg {

LinearProgram DualLP::program() const {
  LinearProgram lp;
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[0] = 1;
  lp.nonnegative.assign(n + 1, true);
  lp.nonnegative[0] = false;
  lp.rows = rows;
  lp.rhs = rhs;
  return lp;
}

DualLP build_dual_lp(const UtilityRule<Rational>& rule, std::size_t n, Execution exec) {
  if (n < 1) throw DomainError("the dual program needs n >= 1");
  if (n > kMaxDualAgents) {
    throw ResourceLimitError("the dual program enumerates 4^n - 1 signatures; n <= " +
                             std::to_string(kMaxDualAgents) + " supported");
  }
  if (n > rule.n_max()) throw CapacityError("rule does not define f(" + std::to_string(n) + ")");

  const std::uint32_t subsets = 1u << n;
  const std::size_t count = static_cast<std::size_t>(subsets) * subsets - 1;
  DualLP lp;
  lp.n = n;
  lp.signatures.resize(count);
  lp.rows.resize(count);
  lp.rhs.resize(count);

  auto fill = [&](std::int64_t index) {
    // index + 1 skips the (empty, empty) pair.
    const auto code = static_cast<std::uint32_t>(index + 1);
    const std::uint32_t br = code % subsets;
    const std::uint32_t opt = code / subsets;
    auto& row = lp.rows[static_cast<std::size_t>(index)];
    row.assign(n + 1, Rational(0));
    row[0] = br != 0 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int in_br = (br >> i) & 1u;
      const int in_opt = (opt >> i) & 1u;
      if (in_br == in_opt) continue;
      const auto earlier = static_cast<std::size_t>(std::popcount(br & ((1u << i) - 1)));
      const Rational f = rule(earlier + 1);
      row[i + 1] = in_br ? Rational(-f) : f;
    }
    lp.rhs[static_cast<std::size_t>(index)] = opt != 0 ? 1 : 0;
    lp.signatures[static_cast<std::size_t>(index)] = {br, opt};
  };

  const auto total = static_cast<std::int64_t>(count);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) if (total > 1024)
    for (std::int64_t i = 0; i < total; ++i) fill(i);
  } else {
    for (std::int64_t i = 0; i < total; ++i) fill(i);
  }
  return lp;
}

DualSolution solve_lp(const DualLP& lp) {
  auto solution = solve(lp.program());
  switch (solution.status) {
    case LpStatus::Infeasible: throw SolverError("dual program is infeasible");
    case LpStatus::Unbounded: throw SolverError("dual program is unbounded");
    case LpStatus::Optimal: break;
  }
  DualSolution out;
  out.mu = solution.x[0];
  out.lambda.assign(solution.x.begin() + 1, solution.x.end());
  out.pivots = solution.pivots;
  return out;
}

Rational lp_pob(const UtilityRule<Rational>& rule, std::size_t n) {
  if (!(rule(1) > 0)) throw InvalidRuleError("rule '" + rule.name() + "' has f(1) = 0");
  auto solution = solve_lp(build_dual_lp(rule, n));
  if (solution.mu <= 0) throw SolverError("dual optimum is not positive");
  return 1 / solution.mu;
}

namespace {

std::string agent_set(std::uint32_t mask, std::size_t n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

}  // namespace

void write_lp(const DualLP& lp, std::ostream& out) {
  out << "\\ dual program, n = " << lp.n << ", " << lp.rows.size() << " constraints\n";
  out << "minimize\n  obj: mu\n";
  out << "subject to\n";
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const auto& sig = lp.signatures[r];
    out << "  c" << r + 1 << " [br=" << agent_set(sig.br_set, lp.n) << " opt=" << agent_set(sig.opt_set, lp.n)
        << "]:";
    bool empty = true;
    for (std::size_t j = 0; j <= lp.n; ++j) {
      const Rational& a = lp.rows[r][j];
      if (a == 0) continue;
      out << (a < 0 ? " - " : (empty ? " " : " + "));
      Rational magnitude = abs(a);
      if (magnitude != 1) out << to_string(magnitude) << " ";
      out << (j == 0 ? std::string("mu") : "lambda" + std::to_string(j));
      empty = false;
    }
    if (empty) out << " 0";
    out << " >= " << to_string(lp.rhs[r]) << "\n";
  }
  out << "bounds\n  mu free\n";
  for (std::size_t j = 1; j <= lp.n; ++j) out << "  lambda" << j << " >= 0\n";
  out << "end\n";
}

}  // namespace scg
