// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "convexsem/scalar.hpp"

namespace convexsem {

enum class Cmp { LessEq, Eq, GreaterEq };

/// One row: coeffs . x  (cmp)  rhs. `strict` marks an inequality whose
/// slack a strictly feasible point must keep positive; it is rejected on
/// equality rows.
struct LinearConstraint {
  std::vector<Scalar> coeffs;
  Cmp cmp = Cmp::LessEq;
  Scalar rhs = 0;
  bool strict = false;
};

struct LpProblem {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
  /// Per-variable sign restriction; empty means all variables are free.
  /// Marking convex-combination weights nonnegative here keeps them out
  /// of the free-variable split and off the constraint rows.
  std::vector<bool> nonneg;
};

struct LpFeasibility {
  bool feasible = false;
  /// Whether a point exists with positive slack on every strict-flagged
  /// row. Equals `feasible` when no row is flagged.
  bool strictly_feasible = false;
  /// A strictly feasible point when one exists, otherwise a weakly
  /// feasible one; empty when infeasible.
  std::vector<Scalar> witness;
};

/// Exact feasibility verdict via rational simplex (Bland's rule, no
/// rounding, no cycling).
LpFeasibility lp_feasible(const LpProblem& problem);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOptimum {
  LpStatus status = LpStatus::Infeasible;
  Scalar value = 0;
  std::vector<Scalar> point;
};

LpOptimum lp_maximize(const LpProblem& problem, const std::vector<Scalar>& objective);
LpOptimum lp_minimize(const LpProblem& problem, const std::vector<Scalar>& objective);

} // namespace convexsem
