// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "convexsem/domain.hpp"

namespace convexsem {

/// A finite formal convex sum over a domain: weighted points with
/// nonnegative rational weights summing to exactly one.
struct WeightedPoint {
  Scalar weight;
  Point point;
};

struct FormalConvexSum {
  std::vector<WeightedPoint> entries;
};

/// A convex sum whose points are themselves convex sums, for checking
/// the flattening axiom.
struct NestedEntry {
  Scalar weight;
  FormalConvexSum inner;
};

struct NestedConvexSum {
  std::vector<NestedEntry> entries;
};

/// The domain's mixing operation: weighted coordinate averages on
/// continuous domains; the join of all points carrying nonzero weight
/// on lattice domains (weights are discarded).
Point mix(const DomainPtr& domain, const FormalConvexSum& sum);

/// Verify the mixing axioms' flattening law on a concrete nested sum:
/// mixing the inner sums first and mixing the flattened sum (weights
/// multiplied through) must give the same point.
bool flatten_check(const DomainPtr& domain, const NestedConvexSum& nested);

} // namespace convexsem
