// SPDX-License-Identifier: Apache-2.0
#include "convexsem/lp.hpp"

#include <algorithm>

#include "convexsem/errors.hpp"

namespace convexsem {

namespace {

/// Dense simplex tableau kept in canonical form: every basic column is a
/// unit vector and b >= 0. The reduced-cost row `z` and the objective
/// value `z0` are updated incrementally by pivots.
struct Tableau {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<Scalar>> a;
  std::vector<Scalar> b;
  std::vector<Scalar> z;
  Scalar z0 = 0;
  std::vector<int> basis;
};

/// Recompute reduced costs d_j = c_j - c_B B^{-1} A_j for a tableau whose
/// basic columns are already unit vectors.
void canonicalize(Tableau& t, const std::vector<Scalar>& cost) {
  t.z.assign(t.cols, Scalar(0));
  t.z0 = 0;
  for (int j = 0; j < t.cols; ++j) t.z[j] = cost[j];
  for (int i = 0; i < t.rows; ++i) {
    const Scalar& cb = cost[t.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < t.cols; ++j) {
      if (t.a[i][j] != 0) t.z[j] -= cb * t.a[i][j];
    }
    t.z0 += cb * t.b[i];
  }
}

void pivot(Tableau& t, int row, int col) {
  const Scalar piv = t.a[row][col];
  for (int j = 0; j < t.cols; ++j) t.a[row][j] /= piv;
  t.b[row] /= piv;
  for (int i = 0; i < t.rows; ++i) {
    if (i == row || t.a[i][col] == 0) continue;
    const Scalar f = t.a[i][col];
    for (int j = 0; j < t.cols; ++j) {
      if (t.a[row][j] != 0) t.a[i][j] -= f * t.a[row][j];
    }
    t.b[i] -= f * t.b[row];
  }
  if (t.z[col] != 0) {
    const Scalar f = t.z[col];
    for (int j = 0; j < t.cols; ++j) {
      if (t.a[row][j] != 0) t.z[j] -= f * t.a[row][j];
    }
    t.z0 += f * t.b[row];
  }
  t.basis[row] = col;
}

/// Maximize cost.x over the canonical tableau. Bland's rule (lowest
/// eligible index for both entering and leaving choices) guarantees
/// termination without anti-cycling perturbations.
LpStatus simplex_max(Tableau& t, const std::vector<Scalar>& cost) {
  canonicalize(t, cost);
  for (;;) {
    int entering = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (t.z[j] > 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return LpStatus::Optimal;
    int leaving = -1;
    Scalar best_ratio = 0;
    for (int i = 0; i < t.rows; ++i) {
      if (t.a[i][entering] <= 0) continue;
      Scalar ratio = t.b[i] / t.a[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return LpStatus::Unbounded;
    pivot(t, leaving, entering);
  }
}

/// Standard-form encoding of an LpProblem: every free variable x_j is
/// split as a difference of two nonnegative columns, nonnegative
/// variables keep a single column, inequalities gain a slack column, and
/// Phase I appends one artificial column per row.
struct StandardForm {
  Tableau t;
  int structural_cols = 0; // variable + slack columns, before artificials
  int num_vars = 0;
  std::vector<int> pos_col;
  std::vector<int> neg_col; // -1 for nonnegative variables
};

StandardForm build_standard_form(const LpProblem& problem) {
  if (problem.num_vars < 0) fail(ErrorKind::MalformedInput, "negative variable count");
  if (!problem.nonneg.empty() &&
      static_cast<int>(problem.nonneg.size()) != problem.num_vars) {
    fail(ErrorKind::MalformedInput, "sign-restriction list does not match variable count");
  }
  for (const auto& c : problem.constraints) {
    if (static_cast<int>(c.coeffs.size()) != problem.num_vars) {
      fail(ErrorKind::MalformedInput,
           "constraint arity " + std::to_string(c.coeffs.size()) +
               " does not match variable count " + std::to_string(problem.num_vars));
    }
  }
  StandardForm sf;
  sf.num_vars = problem.num_vars;
  sf.pos_col.assign(problem.num_vars, -1);
  sf.neg_col.assign(problem.num_vars, -1);
  int next_col = 0;
  for (int j = 0; j < problem.num_vars; ++j) {
    sf.pos_col[j] = next_col++;
    if (problem.nonneg.empty() || !problem.nonneg[j]) sf.neg_col[j] = next_col++;
  }
  const int m = static_cast<int>(problem.constraints.size());
  int slack = 0;
  for (const auto& c : problem.constraints) {
    if (c.cmp != Cmp::Eq) ++slack;
  }
  sf.structural_cols = next_col + slack;
  Tableau& t = sf.t;
  t.rows = m;
  t.cols = sf.structural_cols + m; // artificials appended
  t.a.assign(m, std::vector<Scalar>(t.cols, Scalar(0)));
  t.b.assign(m, Scalar(0));
  t.basis.assign(m, -1);
  int next_slack = next_col;
  for (int i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    for (int j = 0; j < problem.num_vars; ++j) {
      t.a[i][sf.pos_col[j]] = c.coeffs[j];
      if (sf.neg_col[j] >= 0) t.a[i][sf.neg_col[j]] = -c.coeffs[j];
    }
    if (c.cmp == Cmp::LessEq) t.a[i][next_slack++] = 1;
    if (c.cmp == Cmp::GreaterEq) t.a[i][next_slack++] = -1;
    t.b[i] = c.rhs;
    if (t.b[i] < 0) {
      for (int j = 0; j < t.cols; ++j) t.a[i][j] = -t.a[i][j];
      t.b[i] = -t.b[i];
    }
    t.a[i][sf.structural_cols + i] = 1;
    t.basis[i] = sf.structural_cols + i;
  }
  return sf;
}

/// Phase I: drive the artificial columns to zero, then pivot or drop any
/// rows they still occupy and truncate them away. Returns false when the
/// constraints are infeasible.
bool phase_one(StandardForm& sf) {
  Tableau& t = sf.t;
  std::vector<Scalar> cost(t.cols, Scalar(0));
  for (int j = sf.structural_cols; j < t.cols; ++j) cost[j] = -1;
  simplex_max(t, cost); // bounded below by -sum(b), never unbounded
  if (t.z0 != 0) return false;
  for (int i = t.rows - 1; i >= 0; --i) {
    if (t.basis[i] < sf.structural_cols) continue;
    int col = -1;
    for (int j = 0; j < sf.structural_cols; ++j) {
      if (t.a[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot(t, i, col);
    } else {
      // Redundant row: zero across all structural columns.
      t.a.erase(t.a.begin() + i);
      t.b.erase(t.b.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.rows;
    }
  }
  for (auto& row : t.a) row.resize(sf.structural_cols);
  t.cols = sf.structural_cols;
  return true;
}

std::vector<Scalar> extract_point(const StandardForm& sf) {
  std::vector<Scalar> y(sf.structural_cols, Scalar(0));
  for (int i = 0; i < sf.t.rows; ++i) {
    if (sf.t.basis[i] < sf.structural_cols) y[sf.t.basis[i]] = sf.t.b[i];
  }
  std::vector<Scalar> x(sf.num_vars, Scalar(0));
  for (int j = 0; j < sf.num_vars; ++j) {
    x[j] = y[sf.pos_col[j]];
    if (sf.neg_col[j] >= 0) x[j] -= y[sf.neg_col[j]];
  }
  return x;
}

LpOptimum solve_max(const LpProblem& problem, const std::vector<Scalar>& objective) {
  if (static_cast<int>(objective.size()) != problem.num_vars) {
    fail(ErrorKind::MalformedInput, "objective arity does not match variable count");
  }
  StandardForm sf = build_standard_form(problem);
  LpOptimum out;
  if (!phase_one(sf)) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  std::vector<Scalar> cost(sf.t.cols, Scalar(0));
  for (int j = 0; j < problem.num_vars; ++j) {
    cost[sf.pos_col[j]] = objective[j];
    if (sf.neg_col[j] >= 0) cost[sf.neg_col[j]] = -objective[j];
  }
  out.status = simplex_max(sf.t, cost);
  if (out.status == LpStatus::Optimal) {
    out.value = sf.t.z0;
    out.point = extract_point(sf);
  }
  return out;
}

} // namespace

LpOptimum lp_maximize(const LpProblem& problem, const std::vector<Scalar>& objective) {
  return solve_max(problem, objective);
}

LpOptimum lp_minimize(const LpProblem& problem, const std::vector<Scalar>& objective) {
  std::vector<Scalar> negated(objective.size());
  for (std::size_t j = 0; j < objective.size(); ++j) negated[j] = -objective[j];
  LpOptimum out = solve_max(problem, negated);
  if (out.status == LpStatus::Optimal) out.value = -out.value;
  return out;
}

LpFeasibility lp_feasible(const LpProblem& problem) {
  bool any_strict = false;
  for (const auto& c : problem.constraints) {
    if (!c.strict) continue;
    if (c.cmp == Cmp::Eq) {
      fail(ErrorKind::MalformedInput, "strict flag is meaningless on an equality row");
    }
    any_strict = true;
  }
  LpFeasibility out;
  const std::vector<Scalar> zero(problem.num_vars, Scalar(0));
  LpOptimum weak = solve_max(problem, zero);
  if (weak.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.witness = std::move(weak.point);
  if (!any_strict) {
    out.strictly_feasible = true;
    return out;
  }
  // Strict feasibility: give every strict row an extra slack t, bound
  // t <= 1, and maximize it; a positive optimum certifies a point with
  // positive slack on all strict rows simultaneously.
  LpProblem widened;
  widened.num_vars = problem.num_vars + 1;
  if (!problem.nonneg.empty()) {
    widened.nonneg = problem.nonneg;
    widened.nonneg.push_back(false);
  }
  for (const auto& c : problem.constraints) {
    LinearConstraint row;
    row.coeffs = c.coeffs;
    row.coeffs.push_back(c.strict ? (c.cmp == Cmp::LessEq ? Scalar(1) : Scalar(-1))
                                  : Scalar(0));
    row.cmp = c.cmp;
    row.rhs = c.rhs;
    widened.constraints.push_back(std::move(row));
  }
  LinearConstraint t_low;
  t_low.coeffs.assign(widened.num_vars, Scalar(0));
  t_low.coeffs.back() = 1;
  t_low.cmp = Cmp::GreaterEq;
  t_low.rhs = 0;
  widened.constraints.push_back(t_low);
  LinearConstraint t_high = t_low;
  t_high.cmp = Cmp::LessEq;
  t_high.rhs = 1;
  widened.constraints.push_back(t_high);
  std::vector<Scalar> objective(widened.num_vars, Scalar(0));
  objective.back() = 1;
  LpOptimum strict = solve_max(widened, objective);
  if (strict.status == LpStatus::Optimal && strict.value > 0) {
    out.strictly_feasible = true;
    strict.point.pop_back();
    out.witness = std::move(strict.point);
  }
  return out;
}

} // namespace convexsem
