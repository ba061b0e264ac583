// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "convexsem/relation.hpp"

namespace convexsem {

/// One convexity violation found by the audit: a mixture of two points
/// of the state that falls outside every cell.
struct AuditIssue {
  std::string description;
};

struct AuditReport {
  std::vector<AuditIssue> issues;
  bool clean() const { return issues.empty(); }
};

/// Checks whether a state's cell union is closed under mixing.
///
/// On all-lattice spaces the check is exhaustive: every pairwise join of
/// points of the union must itself lie in the union. On spaces with
/// continuous factors the check samples: for each pair of distinct
/// cells, a few representative points are drawn from each (low corner,
/// high corner, centroid) and their mixtures (coordinate-wise midpoint
/// on continuous factors, join on lattice factors) are tested for
/// membership in some cell.
///
/// Violations are reported, not raised: cell unions that are not convex
/// are accepted as inputs throughout the engine, and this audit is the
/// designated way to surface them.
AuditReport convexity_audit(const Relation& state);

} // namespace convexsem
