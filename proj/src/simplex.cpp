#include "scg/simplex.hpp"

#include <optional>

#include "scg/error.hpp"

namespace scg {

namespace {

// basic[r] = constant[r] + sum_c coef[r][c] * nonbasic[c]; objective likewise (maximised).
class Dictionary {
 public:
  std::vector<std::size_t> basic;
  std::vector<std::size_t> nonbasic;
  std::vector<Rational> constant;
  std::vector<std::vector<Rational>> coef;
  Rational obj_constant;
  std::vector<Rational> obj;
  std::size_t pivots = 0;

  std::size_t rows() const { return basic.size(); }
  std::size_t cols() const { return nonbasic.size(); }

  void pivot(std::size_t leave, std::size_t enter) {
    auto& lrow = coef[leave];
    const Rational a = lrow[enter];
    // Solve the leaving row for the entering variable.
    Rational inv = 1 / a;
    constant[leave] = -constant[leave] * inv;
    for (std::size_t c = 0; c < cols(); ++c) {
      lrow[c] = c == enter ? inv : Rational(-lrow[c] * inv);
    }
    std::swap(basic[leave], nonbasic[enter]);

    auto substitute = [&](Rational& cst, std::vector<Rational>& row) {
      const Rational factor = row[enter];
      if (factor == 0) return;
      cst += factor * constant[leave];
      for (std::size_t c = 0; c < cols(); ++c) {
        if (c == enter) {
          row[c] = factor * lrow[c];
        } else if (lrow[c] != 0) {
          row[c] += factor * lrow[c];
        }
      }
    };
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r != leave) substitute(constant[r], coef[r]);
    }
    substitute(obj_constant, obj);
    ++pivots;
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize() {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < cols(); ++c) {
        if (obj[c] > 0 && (!enter || nonbasic[c] < nonbasic[*enter])) enter = c;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (coef[r][*enter] >= 0) continue;
        Rational ratio = constant[r] / -coef[r][*enter];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basic[r] < basic[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t vars = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.nonnegative.size() != vars || lp.rhs.size() != m) {
    throw InvalidInputError("linear program dimensions disagree");
  }
  for (const auto& row : lp.rows) {
    if (row.size() != vars) throw InvalidInputError("linear program row has the wrong width");
  }

  // Free variables split as x = x+ - x-; column `split[j]` holds x-.
  std::vector<std::optional<std::size_t>> split(vars);
  std::size_t structural = vars;
  for (std::size_t j = 0; j < vars; ++j) {
    if (!lp.nonnegative[j]) split[j] = structural++;
  }
  // Variable ids: [0, structural) structural, then m slacks, then the auxiliary variable.
  const std::size_t aux = structural + m;

  Dictionary d;
  d.nonbasic.resize(structural + 1);
  for (std::size_t c = 0; c < structural; ++c) d.nonbasic[c] = c;
  d.nonbasic[structural] = aux;
  for (std::size_t i = 0; i < m; ++i) {
    d.basic.push_back(structural + i);
    d.constant.push_back(-lp.rhs[i]);
    std::vector<Rational> row(structural + 1);
    for (std::size_t j = 0; j < vars; ++j) {
      row[j] = lp.rows[i][j];
      if (split[j]) row[*split[j]] = -lp.rows[i][j];
    }
    row[structural] = 1;
    d.coef.push_back(std::move(row));
  }

  // Phase one: maximise -aux.
  d.obj.assign(structural + 1, Rational(0));
  d.obj[structural] = -1;
  std::optional<std::size_t> most_negative;
  for (std::size_t r = 0; r < m; ++r) {
    if (d.constant[r] < 0 && (!most_negative || d.constant[r] < d.constant[*most_negative])) most_negative = r;
  }
  if (most_negative) {
    d.pivot(*most_negative, structural);
    d.optimize();
    if (d.obj_constant < 0) {
      LpSolution out;
      out.status = LpStatus::Infeasible;
      out.pivots = d.pivots;
      return out;
    }
  }
  // Drive the auxiliary variable out of the basis if it lingers at zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (d.basic[r] != aux) continue;
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (d.coef[r][c] != 0) {
        d.pivot(r, c);
        break;
      }
    }
  }
  // Drop the auxiliary column.
  for (std::size_t c = 0; c < d.cols(); ++c) {
    if (d.nonbasic[c] != aux) continue;
    d.nonbasic.erase(d.nonbasic.begin() + static_cast<std::ptrdiff_t>(c));
    for (auto& row : d.coef) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
    break;
  }

  // Phase two: maximise -objective . x expressed over the current nonbasic variables.
  std::vector<Rational> cost(structural);
  for (std::size_t j = 0; j < vars; ++j) {
    cost[j] = -lp.objective[j];
    if (split[j]) cost[*split[j]] = lp.objective[j];
  }
  d.obj.assign(d.cols(), Rational(0));
  d.obj_constant = 0;
  for (std::size_t c = 0; c < d.cols(); ++c) {
    if (d.nonbasic[c] < structural) d.obj[c] += cost[d.nonbasic[c]];
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (d.basic[r] >= structural || cost[d.basic[r]] == 0) continue;
    const Rational& w = cost[d.basic[r]];
    d.obj_constant += w * d.constant[r];
    for (std::size_t c = 0; c < d.cols(); ++c) d.obj[c] += w * d.coef[r][c];
  }

  LpSolution out;
  if (!d.optimize()) {
    out.status = LpStatus::Unbounded;
    out.pivots = d.pivots;
    return out;
  }
  std::vector<Rational> value(structural, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (d.basic[r] < structural) value[d.basic[r]] = d.constant[r];
  }
  out.status = LpStatus::Optimal;
  out.objective = -d.obj_constant;
  out.x.resize(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    out.x[j] = value[j];
    if (split[j]) out.x[j] -= value[*split[j]];
  }
  out.pivots = d.pivots;
  return out;
}

}  // namespace scg
