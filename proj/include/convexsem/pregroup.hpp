// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace convexsem {

/// One simple pregroup type: a base symbol with an iterated adjoint
/// degree. Degree 0 is the plain type, -1 its left adjoint, +1 its
/// right adjoint; degrees iterate (-2 is the left adjoint of the left
/// adjoint, and so on).
struct SimpleType {
  std::string base;
  int adjoint_degree = 0;

  bool operator==(const SimpleType& other) const {
    return base == other.base && adjoint_degree == other.adjoint_degree;
  }
  bool operator!=(const SimpleType& other) const { return !(*this == other); }
};

/// A product of simple types, written left to right. The empty list is
/// the monoid unit.
struct TypeString {
  std::vector<SimpleType> simples;

  bool operator==(const TypeString& other) const { return simples == other.simples; }
  bool operator!=(const TypeString& other) const { return !(*this == other); }
};

/// A contraction matching over a type string: `links` records which
/// index pairs are cancelled (0-based, first < second, sorted), and
/// `survivors` lists the unlinked indices in order. A valid diagram is
/// planar, contracts only adjoint pairs (equal bases with the right
/// degree one step up from the left), and leaves no survivor trapped
/// under a link, so it can always be realized by successive adjacent
/// cancellations.
struct LinkDiagram {
  std::vector<std::pair<int, int>> links;
  std::vector<int> survivors;

  bool operator==(const LinkDiagram& other) const {
    return links == other.links && survivors == other.survivors;
  }
  bool operator!=(const LinkDiagram& other) const { return !(*this == other); }
  bool operator<(const LinkDiagram& other) const {
    return links < other.links || (links == other.links && survivors < other.survivors);
  }
};

/// Reads the plain-text type syntax: simples separated by whitespace,
/// adjoints as dot suffixes ("n.r s n.l"; suffixes iterate, so "n.l.l"
/// is the twice-left adjoint). Throws SyntaxError with a 1-based
/// column on malformed input. An all-whitespace string is the unit.
TypeString parse_type_string(const std::string& text);

std::string format_simple_type(const SimpleType& simple);
std::string format_type_string(const TypeString& ts);
std::string diagram_to_string(const LinkDiagram& diagram);

/// All contraction matchings of `ts` whose survivors spell `target`,
/// lexicographically least first (by sorted link list, then by
/// survivors), truncated to `max_diagrams`. An empty result means the
/// string does not reduce to the target. Feasibility is decided by
/// cubic dynamic programming over spans, so only branches that lead to
/// a complete diagram are ever explored.
std::vector<LinkDiagram> reduce(const TypeString& ts, const TypeString& target,
                                int max_diagrams = 16);

/// True iff `diagram` is a well-formed contraction matching of `ts`
/// (planar, adjoint-contraction links only, no survivor under a link,
/// survivors exactly the unlinked indices in order) whose survivors
/// spell `target`. Malformed input (out-of-range or duplicate indices)
/// returns false rather than throwing.
bool validate_diagram(const TypeString& ts, const LinkDiagram& diagram,
                      const TypeString& target);

/// Exhaustive oracle for `reduce`: simulates every sequence of adjacent
/// cancellations and collects the distinct resulting diagrams, in the
/// same order as `reduce` and with no cap. Strings longer than 10
/// simples are refused with InputTooLarge.
std::vector<LinkDiagram> brute_force_reduce(const TypeString& ts,
                                            const TypeString& target);

} // namespace convexsem
