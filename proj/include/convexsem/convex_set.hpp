// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "convexsem/domain.hpp"
#include "convexsem/interval.hpp"

namespace convexsem {

/// A nonempty convex region of one atomic domain. Continuous domains
/// carry closed coordinate boxes or V-representation polytopes (the
/// convex hull of a finite vertex list); lattice domains carry
/// join-closed member subsets, which are exactly the convex subsets of
/// the semilattice mixing structure.
///
/// Values are immutable after construction and all constructors
/// validate: shapes must match the domain kind, boxes and vertices must
/// stay inside the domain bounds, and lattice subsets must be closed
/// under pairwise join.
class ConvexSet {
 public:
  struct Box {
    std::vector<Interval> intervals;
  };
  struct Polytope {
    std::vector<ContinuousPoint> vertices;
  };
  struct LatticeSet {
    std::vector<int> members; // sorted, duplicate-free element indices
  };

  static ConvexSet box(DomainPtr domain, std::vector<Interval> intervals);
  static ConvexSet polytope(DomainPtr domain, std::vector<ContinuousPoint> vertices);
  static ConvexSet lattice_set(DomainPtr domain, std::vector<int> members);
  static ConvexSet lattice_set_named(DomainPtr domain,
                                     const std::vector<std::string>& members);
  /// The whole domain: its bounding box, or all lattice elements.
  static ConvexSet full(DomainPtr domain);

  const DomainPtr& domain() const { return domain_; }
  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  bool is_polytope() const { return std::holds_alternative<Polytope>(shape_); }
  bool is_lattice() const { return std::holds_alternative<LatticeSet>(shape_); }
  const Box& as_box() const;
  const Polytope& as_polytope() const;
  const LatticeSet& as_lattice() const;

  /// Box corners, polytope vertices, or lattice members, deduplicated.
  /// Every point of the set is a convex mixture of these.
  std::vector<Point> extreme_points() const;
  /// The [min, max] range of coordinate k over the set (continuous only).
  Interval coordinate_extent(int k) const;

 private:
  ConvexSet(DomainPtr domain, std::variant<Box, Polytope, LatticeSet> shape)
      : domain_(std::move(domain)), shape_(std::move(shape)) {}

  DomainPtr domain_;
  std::variant<Box, Polytope, LatticeSet> shape_;
};

/// Exact membership test: interval checks for boxes, an LP over convex
/// combination weights for polytopes, index lookup for lattice sets.
bool member(const ConvexSet& set, const Point& point);

/// Whether two regions overlap substantially. Lattice sets meet iff
/// they share a member. Continuous sets meet iff the intersection is
/// nonempty with positive extent in every coordinate where both sets
/// have positive width; regions touching only along a lower-dimensional
/// face do not meet. See README "Overlap semantics".
bool meets(const ConvexSet& a, const ConvexSet& b);

/// Intersection, in the cases the engine materializes: box with box,
/// lattice with lattice, and either-way containment. Raises
/// EmptyIntersection when the regions do not meet and
/// UnsupportedIntersection for general polytope pairs.
ConvexSet intersect(const ConvexSet& a, const ConvexSet& b);

/// True iff every extreme point of a belongs to b (equivalently, the
/// region of a is contained in the region of b).
bool subset(const ConvexSet& a, const ConvexSet& b);

/// Convex hull of several regions on one domain: a canonicalized
/// polytope over the parts' extreme points, or the join-closure of a
/// union of lattice sets. A single part is returned unchanged.
ConvexSet hull(const DomainPtr& domain, const std::vector<ConvexSet>& parts);

/// Remove duplicate points and every point lying in the hull of the
/// others; the result is the lexicographically sorted extreme-point
/// list, a canonical V-representation.
std::vector<ContinuousPoint> canonicalize_vertices(std::vector<ContinuousPoint> points);

/// Representation-independent equality: mutual containment.
bool operator==(const ConvexSet& a, const ConvexSet& b);
bool operator!=(const ConvexSet& a, const ConvexSet& b);

bool is_full(const ConvexSet& set);

/// Display form: "[60,75]x[3/4,1]" boxes, "hull{(..) (..)}" polytopes,
/// "{name ...}" lattice sets. Machine mode prints bare rationals.
std::string set_to_string(const ConvexSet& set, bool machine = false);

} // namespace convexsem
