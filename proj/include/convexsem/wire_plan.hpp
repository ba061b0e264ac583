// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "convexsem/relation.hpp"

namespace convexsem {

/// Executable form of a string-diagram reduction. Each wire carries a
/// space; `pairs` lists wires contracted by cups; `survivors` lists the
/// wires that remain, in output order. A wire may appear at most once
/// across pairs and survivors; a wire in neither is simply discarded
/// (a delete leg).
///
/// `fusions` extends the planar core with Frobenius spiders: every wire
/// set listed there is joined into a single contraction group (all
/// members must carry one common value), on top of the joins induced by
/// pairs and caps. Fusions add connectivity only, so their wires may
/// also appear in pairs or survivors; naming a fused wire a survivor
/// outputs the group's merged value.
struct WirePlan {
  std::vector<Space> wire_spaces;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> survivors;
  std::vector<std::vector<int>> fusions;
};

/// Validates index ranges, single use of each wire across pairs and
/// survivors, and that paired or fused wires carry equal spaces. Throws
/// MalformedPlan / SpaceMismatch.
void check_plan(const WirePlan& plan);

/// Applies a reduction plan to a list of states whose targets, in order,
/// tile the plan's wires (each state covers a contiguous run of whole
/// wires). States may be cell unions or cap nodes; a cap's two wires act
/// as one contraction group joined to whatever they are paired with,
/// with the cap's restriction constraining the group. Structural states
/// other than caps are expanded into cells when their spaces are finite.
///
/// Contraction is evaluated in two phases per branch (one branch per
/// choice of a cell from every cells state and every cap restriction):
/// first every contraction group checks `meets` factor-wise between all
/// pairs of its members; then the groups that need an exact common
/// value — those with a surviving wire, and contraction-only groups of
/// three or more members, where pairwise overlap does not imply a
/// common point — fold their members with `intersect`. A failed meets
/// or an empty intersection drops the branch; an unsupported
/// intersection is deferred until the branch is known to survive every
/// decidable check, and only then propagates as an error. The ordering
/// matters: a branch must be discarded by ANY failing factor before a
/// partial intersection is allowed to fail hard.
///
/// Errors: SpaceMismatch (wire/state misalignment, unequal joined
/// spaces), MalformedPlan (bad indices, reused wires, two survivors in
/// one group), UnsupportedComposition (structural state that is neither
/// a cap nor materializable), UnsupportedIntersection (propagated).
Relation apply_wire_plan(const WirePlan& plan, const std::vector<Relation>& states);

/// Single-state convenience overload.
Relation apply_wire_plan(const WirePlan& plan, const Relation& state);

} // namespace convexsem
