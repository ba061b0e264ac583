// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "convexsem/cell.hpp"
#include "convexsem/space.hpp"

namespace convexsem {

/// A convex relation between two spaces, represented either as a finite
/// union of product cells over source ⊗ target, or as a lazy structural
/// node (diagonal-shaped relations such as caps, cups, copy and merge,
/// which are not finite unions of product cells on continuous domains).
///
/// Structural nodes carry a restriction: a union of cells over the base
/// space limiting which diagonal points participate. The factories accept
/// an empty list as "unrestricted" and normalize it to the full cell, so
/// a stored restriction is always a nonempty union.
class Relation {
public:
  enum class StructuralKind { Diagonal, Cap, Cup, Copy, Merge };

  struct Structural {
    StructuralKind kind;
    Space base;
    std::vector<Cell> restriction; // cells over base; empty = unrestricted
  };

  /// General relation from explicit cells spanning source ⊗ target.
  static Relation from_cells(Space source, Space target, std::vector<Cell> cells);
  /// State: a relation out of the unit space (a subset of `target`).
  static Relation state(Space target, std::vector<Cell> cells);
  /// Identity on `space` ({(a,a)}); the diagonal with no restriction.
  static Relation identity(const Space& space);
  /// The diagonal on `space` restricted to a union of cells.
  static Relation diagonal(const Space& space, std::vector<Cell> restriction);
  /// Cap: I → space ⊗ space, the name {(*,(a,a))} of the identity.
  static Relation cap(const Space& space);
  /// Cap restricted to a cell union (the name of a restricted diagonal;
  /// this is what "copy applied to a state" produces).
  static Relation cap_restricted(const Space& space, std::vector<Cell> restriction);
  /// Cup: space ⊗ space → I, converse of cap.
  static Relation cup(const Space& space);
  static Relation cup_restricted(const Space& space, std::vector<Cell> restriction);
  /// Frobenius copy: space → space ⊗ space, {(a,(a,a))}.
  static Relation copy(const Space& space);
  static Relation copy_restricted(const Space& space, std::vector<Cell> restriction);
  /// Frobenius merge: space ⊗ space → space, converse of copy.
  static Relation merge(const Space& space);
  static Relation merge_restricted(const Space& space, std::vector<Cell> restriction);
  /// Delete: space → I, {(a,*)}. This one IS a product cell (full × unit),
  /// so it is represented as cells, not lazily.
  static Relation discard(const Space& space);

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }

  bool is_cells() const { return std::holds_alternative<std::vector<Cell>>(body_); }
  bool is_structural() const { return !is_cells(); }
  const std::vector<Cell>& cells() const;
  const Structural& structural() const;

  /// True for cells bodies and for structural bodies whose base space is
  /// all-lattice (finite, hence expandable into singleton cells).
  bool materializable() const;
  /// Expands a structural body into explicit cells (one per diagonal
  /// point). Cells bodies are returned canonicalized. Throws
  /// UnsupportedComposition when the body cannot be materialized.
  Relation materialized() const;

  std::string to_string(bool machine = false) const;

private:
  Relation(Space source, Space target, std::vector<Cell> cells);
  Relation(Space source, Space target, Structural node);

  Space source_;
  Space target_;
  std::variant<std::vector<Cell>, Structural> body_;
};

/// Diagrammatic composition: first r (A→B), then t (B→C). For cell
/// bodies this is exact relational composition of product-cell unions:
/// a cell pair contributes iff the B-halves meet factor-wise. Structural
/// operands are fused symbolically where the result is cell-representable
/// (e.g. state ∘ copy → restricted cap, restricted cap ∘ merge → the
/// intersected state), materialized when the spaces are finite, and
/// rejected with UnsupportedComposition otherwise.
Relation compose(const Relation& r, const Relation& t);

/// Relational converse (the dagger). Swaps source and target; on cells
/// it transposes each cell, on structural nodes it swaps cap↔cup and
/// copy↔merge, keeping the restriction.
Relation converse(const Relation& r);

/// Monoidal product: sources and targets concatenate; cells combine
/// pairwise. Structural operands are materialized when possible; a
/// structural operand on a continuous space cannot be tensored eagerly
/// and raises UnsupportedComposition (plan application fuses such nodes
/// instead).
Relation tensor(const Relation& r, const Relation& t);

/// Every point of a relation over pure lattice spaces, as concatenated
/// source-then-target tuples of element indices. Throws
/// UnsupportedComposition when a factor is continuous.
std::set<std::vector<int>> lattice_points(const Relation& rel);

/// Equality. Relations over pure lattice spaces compare exactly by
/// point set. Otherwise cell bodies compare as mutual cell-wise
/// subsumption after canonicalization (sound but sensitive to the cell
/// decomposition), structural bodies by kind, base and restriction, and
/// mixed cells/structural pairs via materialization when finite.
bool operator==(const Relation& a, const Relation& b);
bool operator!=(const Relation& a, const Relation& b);

} // namespace convexsem
