// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "convexsem/convex_set.hpp"
#include "convexsem/space.hpp"

namespace convexsem {

/// One product block of a relation: a convex set per factor of a space,
/// in factor order. The cell over the unit space has no components and
/// denotes the single point *.
struct Cell {
  std::vector<ConvexSet> components;

  int size() const { return static_cast<int>(components.size()); }
};

/// Throws SpaceMismatch unless the cell has one component per factor of
/// `space`, each on the matching domain. `what` names the offender in
/// error messages.
void check_cell(const Cell& cell, const Space& space, const std::string& what);

/// A cell whose every component is the full set of its factor's domain.
Cell full_cell(const Space& space);

/// Concatenation of component lists (cell over the tensor space).
Cell concat_cells(const Cell& a, const Cell& b);

/// Components [begin, end) as a cell over the corresponding factor range.
Cell slice_cell(const Cell& cell, int begin, int end);

/// True when every component of `a` is a subset of the matching component
/// of `b` (so the product block a is contained in b).
bool cell_subsumes(const Cell& b, const Cell& a);

/// True when the cells agree component-wise.
bool cell_equal(const Cell& a, const Cell& b);

/// True when every pair of matching components meets (the product blocks
/// overlap genuinely in every factor).
bool cell_meets(const Cell& a, const Cell& b);

/// Component-wise intersection. Throws EmptyIntersection or
/// UnsupportedIntersection as the component intersections do.
Cell cell_intersect(const Cell& a, const Cell& b);

/// "coords [60,75]x[0.75,1] ; taste hull{...}" style rendering: components
/// joined by " x ". The unit cell prints "*".
std::string cell_to_string(const Cell& cell, bool machine = false);

/// Drops every cell that is subsumed by another cell of the list (equal
/// cells keep their first occurrence). Order of survivors is preserved.
std::vector<Cell> canonicalize_cells(std::vector<Cell> cells);

/// True when every cell of `a` is subsumed by some cell of `b` and vice
/// versa, after canonicalization.
bool cell_lists_equivalent(const std::vector<Cell>& a, const std::vector<Cell>& b);

} // namespace convexsem
