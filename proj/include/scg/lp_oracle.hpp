#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "scg/game.hpp"
#include "scg/parallel.hpp"
#include "scg/simplex.hpp"

namespace scg {

/// Which agents cover a resource in the 1-round best-response profile and in the optimum.
/// Bit i stands for agent i+1.
struct ResourceSignature {
  std::uint32_t br_set = 0;
  std::uint32_t opt_set = 0;
};

/// Dual program for the worst 1-round outcome over all games with a fixed rule and n agents:
///   minimize mu  over  mu free, lambda_1..lambda_n >= 0
///   s.t. for every signature (B, O) != (empty, empty):
///     mu [B != empty] - sum_i lambda_i (1_B(i) - 1_O(i)) f(|B intersect {1..i-1}| + 1) >= [O != empty]
/// Column 0 is mu, column i is lambda_i.
struct DualLP {
  std::size_t n = 0;
  std::vector<ResourceSignature> signatures;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  LinearProgram program() const;
};

inline constexpr std::size_t kMaxDualAgents = 8;

DualLP build_dual_lp(const UtilityRule<Rational>& rule, std::size_t n, Execution exec = Execution::Parallel);

struct DualSolution {
  Rational mu;
  std::vector<Rational> lambda;
  std::size_t pivots = 0;
};

/// Exact optimum; throws SolverError when the program is infeasible or unbounded.
DualSolution solve_lp(const DualLP& lp);

/// 1 / mu*.
Rational lp_pob(const UtilityRule<Rational>& rule, std::size_t n);

/// Plain-text listing: objective, variables and every constraint with rational coefficients.
void write_lp(const DualLP& lp, std::ostream& out);

}  // namespace scg
