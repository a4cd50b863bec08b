#pragma once

#include <cstddef>
#include <vector>

#include "scg/numeric.hpp"

namespace scg {

/// minimize objective . x  subject to  rows[i] . x >= rhs[i],  x_j >= 0 where nonnegative[j].
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<bool> nonnegative;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

/// Exact two-phase simplex on a dictionary over the structural columns, with a single
/// auxiliary variable for phase one and Bland's rule throughout (terminates on degenerate LPs).
LpSolution solve(const LinearProgram& lp);

}  // namespace scg
