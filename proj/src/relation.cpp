// SPDX-License-Identifier: Apache-2.0
#include "convexsem/relation.hpp"

#include <optional>
#include <set>
#include <utility>

#include "convexsem/errors.hpp"

namespace convexsem {

namespace {

using Kind = Relation::StructuralKind;

const char* kind_name(Kind kind) {
  switch (kind) {
  case Kind::Diagonal: return "diagonal";
  case Kind::Cap: return "cap";
  case Kind::Cup: return "cup";
  case Kind::Copy: return "copy";
  case Kind::Merge: return "merge";
  }
  return "?";
}

/// Pairwise meets-then-intersect of two cell unions: the representable
/// genuine overlap of ∪a and ∪b. May come back empty.
std::vector<Cell> combine_unions(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  std::vector<Cell> out;
  for (const auto& ca : a)
    for (const auto& cb : b)
      if (cell_meets(ca, cb))
        out.push_back(cell_intersect(ca, cb));
  return canonicalize_cells(std::move(out));
}

/// Appends every lattice point (tuple of element indices) of a cell over
/// an all-lattice space.
void append_cell_points(const Cell& cell, std::set<std::vector<int>>& out) {
  if (cell.components.empty()) {
    out.insert({});
    return;
  }
  std::vector<std::size_t> pos(cell.components.size(), 0);
  while (true) {
    std::vector<int> point(cell.components.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      point[i] = cell.components[i].as_lattice().members[pos[i]];
    out.insert(std::move(point));
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < cell.components[i].as_lattice().members.size())
        break;
      pos[i] = 0;
    }
    if (i == pos.size())
      break;
  }
}

} // namespace

Relation::Relation(Space source, Space target, std::vector<Cell> cells)
    : source_(std::move(source)), target_(std::move(target)), body_(std::move(cells)) {}

Relation::Relation(Space source, Space target, Structural node)
    : source_(std::move(source)), target_(std::move(target)), body_(std::move(node)) {}

Relation Relation::from_cells(Space source, Space target, std::vector<Cell> cells) {
  Space whole = source.tensor(target);
  for (const auto& cell : cells)
    check_cell(cell, whole, "relation cell");
  return Relation(std::move(source), std::move(target), std::move(cells));
}

Relation Relation::state(Space target, std::vector<Cell> cells) {
  return from_cells(Space::unit(), std::move(target), std::move(cells));
}

Relation Relation::identity(const Space& space) {
  return diagonal(space, {});
}

namespace {

/// Shared body of the structural factories: validates the restriction
/// against the base space and normalizes "no restriction" to the full
/// cell. On the unit space every structural map collapses to the unit
/// relation {(*,*)}, which is an honest cell.
std::vector<Cell> checked_restriction(const Space& base, std::vector<Cell> restriction,
                                      const std::string& what) {
  for (const auto& cell : restriction)
    check_cell(cell, base, what);
  if (restriction.empty())
    restriction.push_back(full_cell(base));
  return restriction;
}

} // namespace

Relation Relation::diagonal(const Space& space, std::vector<Cell> restriction) {
  if (space.is_unit())
    return Relation(Space::unit(), Space::unit(), std::vector<Cell>{Cell{}});
  return Relation(space, space,
                  Structural{Kind::Diagonal, space,
                             checked_restriction(space, std::move(restriction),
                                                 "diagonal restriction")});
}

Relation Relation::cap(const Space& space) { return cap_restricted(space, {}); }

Relation Relation::cap_restricted(const Space& space, std::vector<Cell> restriction) {
  if (space.is_unit())
    return Relation(Space::unit(), Space::unit(), std::vector<Cell>{Cell{}});
  return Relation(Space::unit(), space.tensor(space),
                  Structural{Kind::Cap, space,
                             checked_restriction(space, std::move(restriction),
                                                 "cap restriction")});
}

Relation Relation::cup(const Space& space) { return cup_restricted(space, {}); }

Relation Relation::cup_restricted(const Space& space, std::vector<Cell> restriction) {
  if (space.is_unit())
    return Relation(Space::unit(), Space::unit(), std::vector<Cell>{Cell{}});
  return Relation(space.tensor(space), Space::unit(),
                  Structural{Kind::Cup, space,
                             checked_restriction(space, std::move(restriction),
                                                 "cup restriction")});
}

Relation Relation::copy(const Space& space) { return copy_restricted(space, {}); }

Relation Relation::copy_restricted(const Space& space, std::vector<Cell> restriction) {
  if (space.is_unit())
    return Relation(Space::unit(), Space::unit(), std::vector<Cell>{Cell{}});
  return Relation(space, space.tensor(space),
                  Structural{Kind::Copy, space,
                             checked_restriction(space, std::move(restriction),
                                                 "copy restriction")});
}

Relation Relation::merge(const Space& space) { return merge_restricted(space, {}); }

Relation Relation::merge_restricted(const Space& space, std::vector<Cell> restriction) {
  if (space.is_unit())
    return Relation(Space::unit(), Space::unit(), std::vector<Cell>{Cell{}});
  return Relation(space.tensor(space), space,
                  Structural{Kind::Merge, space,
                             checked_restriction(space, std::move(restriction),
                                                 "merge restriction")});
}

Relation Relation::discard(const Space& space) {
  return from_cells(space, Space::unit(), {full_cell(space)});
}

const std::vector<Cell>& Relation::cells() const {
  if (!is_cells())
    fail(ErrorKind::UnsupportedComposition,
         "structural relation node has no explicit cell list");
  return std::get<std::vector<Cell>>(body_);
}

const Relation::Structural& Relation::structural() const {
  if (is_cells())
    fail(ErrorKind::UnsupportedComposition, "cell relation has no structural node");
  return std::get<Structural>(body_);
}

bool Relation::materializable() const {
  if (is_cells())
    return true;
  return structural().base.all_lattice();
}

Relation Relation::materialized() const {
  if (is_cells())
    return Relation(source_, target_, canonicalize_cells(cells()));
  if (!materializable())
    fail(ErrorKind::UnsupportedComposition,
         "cannot expand a structural node over the continuous space " +
             structural().base.to_string() + " into cells");
  const Structural& node = structural();
  int reps = (node.kind == Kind::Copy || node.kind == Kind::Merge) ? 3 : 2;
  std::set<std::vector<int>> points;
  for (const auto& cell : node.restriction)
    append_cell_points(cell, points);
  std::vector<Cell> out;
  for (const auto& point : points) {
    Cell cell;
    for (int rep = 0; rep < reps; ++rep)
      for (std::size_t i = 0; i < point.size(); ++i)
        cell.components.push_back(
            ConvexSet::lattice_set(node.base.factors()[i], {point[i]}));
    out.push_back(std::move(cell));
  }
  return Relation(source_, target_, std::move(out));
}

std::string Relation::to_string(bool machine) const {
  std::string out;
  if (!source_.is_unit() || is_structural())
    out = source_.to_string() + " -> " + target_.to_string() + " : ";
  if (is_cells()) {
    const auto& cs = cells();
    if (cs.empty())
      return out + "empty";
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i > 0)
        out += " | ";
      out += cell_to_string(cs[i], machine);
    }
    return out;
  }
  const Structural& node = structural();
  out += std::string(kind_name(node.kind)) + "[" + node.base.to_string() + "]";
  bool unrestricted =
      node.restriction.size() == 1 && cell_equal(node.restriction[0], full_cell(node.base));
  if (!unrestricted) {
    out += "{";
    for (std::size_t i = 0; i < node.restriction.size(); ++i) {
      if (i > 0)
        out += " | ";
      out += cell_to_string(node.restriction[i], machine);
    }
    out += "}";
  }
  return out;
}

namespace {

/// r-cells (A → D⊗D) composed with a cup or merge over D: keeps the A
/// block, requires both D halves to meet each other and a restriction
/// cell; merge then folds the halves into one block, cup drops them.
Relation compose_cells_into_halves(const Relation& r, const Relation& t) {
  const auto& node = t.structural();
  int asz = r.source().size();
  int k = node.base.size();
  std::vector<Cell> out;
  for (const auto& cell : r.cells()) {
    Cell a = slice_cell(cell, 0, asz);
    Cell left = slice_cell(cell, asz, asz + k);
    Cell right = slice_cell(cell, asz + k, asz + 2 * k);
    if (!cell_meets(left, right))
      continue;
    for (const auto& rc : node.restriction) {
      if (!cell_meets(left, rc) || !cell_meets(right, rc))
        continue;
      if (node.kind == Kind::Cup) {
        out.push_back(a);
        break; // one passing restriction cell suffices for a cup
      }
      out.push_back(concat_cells(a, cell_intersect(cell_intersect(left, right), rc)));
    }
  }
  return Relation::from_cells(r.source(), t.target(), canonicalize_cells(std::move(out)));
}

/// A cap or copy over D composed into t-cells (D⊗D → C): mirror image of
/// compose_cells_into_halves.
Relation compose_halves_into_cells(const Relation& r, const Relation& t) {
  const auto& node = r.structural();
  int k = node.base.size();
  std::vector<Cell> out;
  for (const auto& cell : t.cells()) {
    Cell left = slice_cell(cell, 0, k);
    Cell right = slice_cell(cell, k, 2 * k);
    Cell c = slice_cell(cell, 2 * k, cell.size());
    if (!cell_meets(left, right))
      continue;
    for (const auto& rc : node.restriction) {
      if (!cell_meets(left, rc) || !cell_meets(right, rc))
        continue;
      if (node.kind == Kind::Cap) {
        out.push_back(c);
        break; // one passing restriction cell suffices for a cap
      }
      out.push_back(concat_cells(cell_intersect(cell_intersect(left, right), rc), c));
    }
  }
  return Relation::from_cells(r.source(), t.target(), canonicalize_cells(std::move(out)));
}

/// Fusions between two structural nodes. Each case combines the two
/// restrictions (genuine overlap) and rebuilds the resulting shape; an
/// empty combination yields the empty relation of the right signature.
Relation compose_structural(const Relation& r, const Relation& t) {
  const auto& lhs = r.structural();
  const auto& rhs = t.structural();
  auto empty_result = [&] { return Relation::from_cells(r.source(), t.target(), {}); };

  if (lhs.kind == Kind::Cap && rhs.kind == Kind::Cup) {
    for (const auto& a : lhs.restriction)
      for (const auto& b : rhs.restriction)
        if (cell_meets(a, b))
          return Relation::from_cells(Space::unit(), Space::unit(), {Cell{}});
    return empty_result();
  }
  if (lhs.kind == Kind::Cap && rhs.kind == Kind::Merge)
    return Relation::state(rhs.base, combine_unions(lhs.restriction, rhs.restriction));
  if (lhs.kind == Kind::Copy && rhs.kind == Kind::Cup)
    return Relation::from_cells(lhs.base, Space::unit(),
                                combine_unions(lhs.restriction, rhs.restriction));

  // Shape-preserving fusions over a shared base: the combined restriction
  // decorates a single surviving node. These are the only pairs whose
  // bases can coincide; a diagonal on a tensor square against a per-half
  // node does not fuse and falls through to materialization.
  std::optional<Kind> shape;
  if (lhs.kind == Kind::Diagonal && rhs.kind == Kind::Diagonal)
    shape = Kind::Diagonal;
  else if (lhs.kind == Kind::Copy && rhs.kind == Kind::Merge)
    shape = Kind::Diagonal;
  else if (lhs.kind == Kind::Diagonal && rhs.kind == Kind::Copy)
    shape = Kind::Copy;
  else if (lhs.kind == Kind::Merge && rhs.kind == Kind::Diagonal)
    shape = Kind::Merge;

  const Space& base = lhs.kind == Kind::Diagonal ? rhs.base : lhs.base;
  const Space& other = lhs.kind == Kind::Diagonal ? lhs.base : rhs.base;
  if (shape && base == other) {
    auto combined = combine_unions(lhs.restriction, rhs.restriction);
    if (combined.empty())
      return empty_result();
    switch (*shape) {
    case Kind::Diagonal: return Relation::diagonal(base, std::move(combined));
    case Kind::Copy: return Relation::copy_restricted(base, std::move(combined));
    case Kind::Merge: return Relation::merge_restricted(base, std::move(combined));
    default: break;
    }
  }

  if (r.materializable() && t.materializable())
    return compose(r.materialized(), t.materialized());
  fail(ErrorKind::UnsupportedComposition,
       "no fusion rule for " + std::string(kind_name(lhs.kind)) + " composed with " +
           kind_name(rhs.kind) + " on a continuous space");
}

} // namespace

Relation compose(const Relation& r, const Relation& t) {
  if (r.target() != t.source())
    fail(ErrorKind::SpaceMismatch, "cannot compose: middle spaces differ (" +
                                       r.target().to_string() + " vs " +
                                       t.source().to_string() + ")");

  if (r.is_cells() && t.is_cells()) {
    int asz = r.source().size();
    int bsz = r.target().size();
    std::vector<Cell> out;
    for (const auto& rc : r.cells()) {
      Cell a = slice_cell(rc, 0, asz);
      Cell b = slice_cell(rc, asz, asz + bsz);
      for (const auto& tc : t.cells()) {
        Cell c = slice_cell(tc, 0, bsz);
        Cell d = slice_cell(tc, bsz, tc.size());
        if (cell_meets(b, c))
          out.push_back(concat_cells(a, d));
      }
    }
    return Relation::from_cells(r.source(), t.target(), canonicalize_cells(std::move(out)));
  }

  if (r.is_cells() && t.is_structural()) {
    const auto& node = t.structural();
    switch (node.kind) {
    case Kind::Diagonal: {
      int asz = r.source().size();
      std::vector<Cell> out;
      for (const auto& cell : r.cells()) {
        Cell a = slice_cell(cell, 0, asz);
        Cell b = slice_cell(cell, asz, cell.size());
        for (const auto& rc : node.restriction)
          if (cell_meets(b, rc))
            out.push_back(concat_cells(a, cell_intersect(b, rc)));
      }
      return Relation::from_cells(r.source(), t.target(),
                                  canonicalize_cells(std::move(out)));
    }
    case Kind::Cup:
    case Kind::Merge:
      return compose_cells_into_halves(r, t);
    case Kind::Copy:
      if (r.source().is_unit())
        return Relation::cap_restricted(node.base,
                                        combine_unions(r.cells(), node.restriction));
      break; // a copy after a general relation is not cell-representable
    case Kind::Cap:
      break; // cap's source is I, so r must be an I → I relation; fall through
    }
  }

  if (r.is_structural() && t.is_cells()) {
    const auto& node = r.structural();
    switch (node.kind) {
    case Kind::Diagonal: {
      int csz = t.target().size();
      int k = node.base.size();
      std::vector<Cell> out;
      for (const auto& cell : t.cells()) {
        Cell b = slice_cell(cell, 0, k);
        Cell c = slice_cell(cell, k, k + csz);
        for (const auto& rc : node.restriction)
          if (cell_meets(b, rc))
            out.push_back(concat_cells(cell_intersect(b, rc), c));
      }
      return Relation::from_cells(r.source(), t.target(),
                                  canonicalize_cells(std::move(out)));
    }
    case Kind::Cap:
    case Kind::Copy:
      return compose_halves_into_cells(r, t);
    case Kind::Cup:
    case Kind::Merge:
      break; // target-side diagonals; not cell-representable in general
    }
  }

  if (r.is_structural() && t.is_structural())
    return compose_structural(r, t);

  if (r.materializable() && t.materializable())
    return compose(r.materialized(), t.materialized());
  fail(ErrorKind::UnsupportedComposition,
       "no fusion rule for this composition on a continuous space");
}

Relation converse(const Relation& r) {
  if (r.is_cells()) {
    int asz = r.source().size();
    std::vector<Cell> out;
    out.reserve(r.cells().size());
    for (const auto& cell : r.cells())
      out.push_back(
          concat_cells(slice_cell(cell, asz, cell.size()), slice_cell(cell, 0, asz)));
    return Relation::from_cells(r.target(), r.source(), std::move(out));
  }
  const auto& node = r.structural();
  switch (node.kind) {
  case Kind::Diagonal: return Relation::diagonal(node.base, node.restriction);
  case Kind::Cap: return Relation::cup_restricted(node.base, node.restriction);
  case Kind::Cup: return Relation::cap_restricted(node.base, node.restriction);
  case Kind::Copy: return Relation::merge_restricted(node.base, node.restriction);
  case Kind::Merge: return Relation::copy_restricted(node.base, node.restriction);
  }
  fail(ErrorKind::UnsupportedComposition, "unknown structural kind");
}

Relation tensor(const Relation& r, const Relation& t) {
  Relation left = r.is_structural() ? r.materialized() : r;
  Relation right = t.is_structural() ? t.materialized() : t;
  int lasz = left.source().size();
  int rasz = right.source().size();
  std::vector<Cell> out;
  out.reserve(left.cells().size() * right.cells().size());
  for (const auto& lc : left.cells())
    for (const auto& rc : right.cells()) {
      Cell cell = slice_cell(lc, 0, lasz);
      cell = concat_cells(cell, slice_cell(rc, 0, rasz));
      cell = concat_cells(cell, slice_cell(lc, lasz, lc.size()));
      cell = concat_cells(cell, slice_cell(rc, rasz, rc.size()));
      out.push_back(std::move(cell));
    }
  return Relation::from_cells(left.source().tensor(right.source()),
                              left.target().tensor(right.target()), std::move(out));
}

std::set<std::vector<int>> lattice_points(const Relation& rel) {
  if (!rel.source().all_lattice() || !rel.target().all_lattice())
    fail(ErrorKind::UnsupportedComposition,
         "relation over a continuous space has no finite point set");
  std::set<std::vector<int>> points;
  for (const auto& cell : rel.materialized().cells())
    append_cell_points(cell, points);
  return points;
}

bool operator==(const Relation& a, const Relation& b) {
  if (a.source() != b.source() || a.target() != b.target())
    return false;
  // Relations over pure lattice spaces are finite, so equality is decided
  // exactly on their point sets; different cell decompositions of the
  // same relation (one two-point set versus two singleton cells) compare
  // equal.
  if (a.source().all_lattice() && a.target().all_lattice())
    return lattice_points(a) == lattice_points(b);
  if (a.is_cells() && b.is_cells())
    return cell_lists_equivalent(a.cells(), b.cells());
  if (a.is_structural() && b.is_structural()) {
    const auto& na = a.structural();
    const auto& nb = b.structural();
    if (na.kind == nb.kind && na.base == nb.base)
      return cell_lists_equivalent(na.restriction, nb.restriction);
  }
  if (a.materializable() && b.materializable())
    return cell_lists_equivalent(a.materialized().cells(), b.materialized().cells());
  return false;
}

bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }

} // namespace convexsem
