// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "convexsem/pregroup.hpp"
#include "convexsem/relation.hpp"
#include "convexsem/wire_plan.hpp"

namespace convexsem {

/// Maps grammar base symbols to spaces. Adjoints of a base interpret to
/// the same space, so a transitive-verb type n.r s n.l lands in
/// N ⊗ S ⊗ N.
struct TypeInterpretation {
  std::vector<std::pair<std::string, Space>> bases; // unique names, in order

  /// Null when the base is not mapped.
  const Space* find(const std::string& base) const;

  bool operator==(const TypeInterpretation& other) const;
  bool operator!=(const TypeInterpretation& other) const { return !(*this == other); }
};

/// The space of one simple type (adjoint degree ignored) or of a whole
/// type string (factor concatenation; the empty type is I). Throws
/// UnknownBase for unmapped symbols.
Space interpret_simple(const TypeInterpretation& ti, const SimpleType& simple);
Space interpret_type(const TypeInterpretation& ti, const TypeString& ts);

/// One word: its grammar type and its meaning, a state I → the type's
/// interpretation. Relative pronouns carry wiring instead of a stored
/// state (their Frobenius components are not finite cell unions on
/// continuous spaces); their `meaning` field is an ignored placeholder.
struct LexicalEntry {
  std::string word;
  TypeString type;
  Relation meaning = Relation::identity(Space::unit());
  bool relative_pronoun = false;

  bool operator==(const LexicalEntry& other) const;
  bool operator!=(const LexicalEntry& other) const { return !(*this == other); }
};

/// Domains, named properties, and word entries, plus the base-symbol
/// interpretation the entries are typed against.
struct Lexicon {
  TypeInterpretation interpretation;
  std::vector<std::pair<std::string, DomainPtr>> domains;
  std::vector<std::pair<std::string, ConvexSet>> properties;
  std::vector<LexicalEntry> entries;

  /// Resolves a surface form: exact match, then lowercased, then with a
  /// trailing "s" stripped ("Bananas" → "banana", "tastes" → "taste").
  /// Null when nothing matches.
  const LexicalEntry* find(const std::string& word) const;
  /// Like find, but throws UnknownWord.
  const LexicalEntry& entry(const std::string& word) const;

  const DomainPtr* find_domain(const std::string& name) const;
  const ConvexSet* find_property(const std::string& name) const;

  bool operator==(const Lexicon& other) const;
  bool operator!=(const Lexicon& other) const { return !(*this == other); }
};

/// Checks name uniqueness and that every non-pronoun entry's meaning is
/// a state on exactly the interpretation of its type. Throws
/// ValidationError naming the offending item.
void validate_lexicon(const Lexicon& lexicon);

/// A reduction diagram turned into something executable: the wire plan
/// over the non-pronoun words' wires, and those words' states in order.
struct PlanBuild {
  WirePlan plan;
  std::vector<Relation> states;
};

/// Expands a link diagram over the words' concatenated types into a
/// wire plan. Each simple type becomes one wire carrying its space;
/// diagram links become contraction groups. A relative-pronoun entry
/// contributes no state; instead all its wires sharing its head base
/// are fused into one Frobenius group (joining, for "which", the head
/// noun, the pronoun's output, and the verb's subject wire) and its
/// remaining wires discard whatever they are linked to (the sentence
/// wire of the verb is deleted). Throws SpaceMismatch when joined wires
/// carry different spaces, UnsupportedComposition when a pronoun's
/// output connects to no word with a meaning.
PlanBuild plan_from_diagram(const TypeInterpretation& ti,
                            const std::vector<const LexicalEntry*>& words,
                            const LinkDiagram& diagram);

/// One evaluated parse: the resulting state, the diagram that produced
/// it, and the phrase's concatenated type string.
struct PhraseMeaning {
  Relation state;
  LinkDiagram diagram;
  TypeString phrase_type;
};

/// Looks up every word, reduces the concatenated types to `target`, and
/// applies the first diagram's plan to the word states. Throws
/// UnknownWord, NoReduction (ungrammatical phrase), and engine errors.
PhraseMeaning evaluate(const Lexicon& lexicon, const std::vector<std::string>& words,
                       const TypeString& target);

/// Every parse up to `max_parses`, evaluated separately in diagram
/// order. Distinct parses may yield distinct states; callers compare.
std::vector<PhraseMeaning> evaluate_all(const Lexicon& lexicon,
                                        const std::vector<std::string>& words,
                                        const TypeString& target, int max_parses = 16);

/// A one-domain property placed into a product space: the property on
/// the first factor with its domain, the full range everywhere else.
/// Throws DomainMismatch when the domain does not occur in the space.
Relation lift_property(const ConvexSet& property, const Space& space);

/// The diagonal relation restricted to a noun state's region: the
/// adjective that intersects with that noun, kept lazy so it works on
/// continuous spaces.
Relation intersective_adjective(const Relation& noun);

/// Hyponymy as containment: every cell of `a` lies factor-wise inside
/// some cell of `b` (exact point inclusion on pure lattice spaces).
/// Throws SpaceMismatch when the spaces differ.
bool entails(const Relation& a, const Relation& b);

/// The built-in food-and-drink lexicon: colour/taste/texture noun
/// space, the four-point sentence lattice, properties yellow, green,
/// brown, sweet, sour and bitter, nouns banana, apple, beer and fruit,
/// adjectives yellow and soft, the five-cell transitive verb taste,
/// lifted argument nouns sweet and bitter, and the relative pronoun
/// which.
Lexicon demo_lexicon();

} // namespace convexsem
