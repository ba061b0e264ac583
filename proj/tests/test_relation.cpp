// SPDX-License-Identifier: Apache-2.0
//
// The convex-relation engine: categorical laws checked against an
// exhaustive pair-set oracle on random finite lattices, the worked
// continuous pipelines, wire-plan evaluation, and the convexity audit.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "test_support.hpp"

#include "convexsem/audit.hpp"
#include "convexsem/relation.hpp"
#include "convexsem/wire_plan.hpp"

using namespace convexsem;
using testsupport::ErrorKindIs;
using testsupport::rat;

namespace {

// --- Independent pair-set relational algebra -----------------------------
//
// Points are tuples of lattice element indices; relations are literal
// sets of (source point, target point) pairs. Everything here is built
// from the textbook definitions with exhaustive enumeration, so the
// cell engine can be compared against it wholesale.

using Pt = std::vector<int>;
using PairSet = std::set<std::pair<Pt, Pt>>;

Pt cat(Pt a, const Pt& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Pt> space_points(const Space& space) {
  std::vector<Pt> points{{}};
  for (const auto& factor : space.factors()) {
    std::vector<Pt> next;
    for (const auto& p : points)
      for (int e = 0; e < factor->lattice_size(); ++e) {
        Pt q = p;
        q.push_back(e);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  return points;
}

PairSet o_compose(const PairSet& r, const PairSet& t) {
  PairSet out;
  for (const auto& [a, b] : r)
    for (const auto& [c, d] : t)
      if (b == c)
        out.insert({a, d});
  return out;
}

PairSet o_converse(const PairSet& r) {
  PairSet out;
  for (const auto& [a, b] : r)
    out.insert({b, a});
  return out;
}

PairSet o_tensor(const PairSet& r, const PairSet& t) {
  PairSet out;
  for (const auto& [a, b] : r)
    for (const auto& [c, d] : t)
      out.insert({cat(a, c), cat(b, d)});
  return out;
}

PairSet o_identity(const Space& s) {
  PairSet out;
  for (const auto& p : space_points(s))
    out.insert({p, p});
  return out;
}

PairSet o_cap(const Space& s) {
  PairSet out;
  for (const auto& p : space_points(s))
    out.insert({{}, cat(p, p)});
  return out;
}

PairSet o_cup(const Space& s) { return o_converse(o_cap(s)); }

PairSet o_copy(const Space& s) {
  PairSet out;
  for (const auto& p : space_points(s))
    out.insert({p, cat(p, p)});
  return out;
}

PairSet o_merge(const Space& s) { return o_converse(o_copy(s)); }

PairSet o_delete(const Space& s) {
  PairSet out;
  for (const auto& p : space_points(s))
    out.insert({p, {}});
  return out;
}

/// All points of one product cell, enumerated directly from the member
/// lists (no engine logic involved).
std::vector<Pt> cell_points(const Cell& cell) {
  std::vector<Pt> points{{}};
  for (const auto& component : cell.components) {
    std::vector<Pt> next;
    for (const auto& p : points)
      for (int m : component.as_lattice().members) {
        Pt q = p;
        q.push_back(m);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  return points;
}

std::set<Pt> union_point_set(const std::vector<Cell>& cells) {
  std::set<Pt> out;
  for (const auto& cell : cells)
    for (auto& p : cell_points(cell))
      out.insert(std::move(p));
  return out;
}

/// Engine relation as a literal pair set. Cell bodies expand by direct
/// enumeration; structural bodies go through materialized(), which is
/// itself validated against the o_* definitions below.
PairSet pairs_of(const Relation& rel) {
  Relation m = rel.materialized();
  int ssz = m.source().size();
  PairSet out;
  for (const auto& cell : m.cells())
    for (const auto& p : cell_points(cell))
      out.insert({Pt(p.begin(), p.begin() + ssz), Pt(p.begin() + ssz, p.end())});
  return out;
}

std::set<Pt> tuples_of(const Relation& rel) {
  std::set<Pt> out;
  for (const auto& [a, b] : pairs_of(rel))
    out.insert(cat(a, b));
  return out;
}

/// Mix-closure of a relation's literal tuple set: every factor-wise join
/// of two tuples must be a tuple of the set.
bool mix_closed(const Relation& rel) {
  Space whole = rel.source().tensor(rel.target());
  auto tuples = tuples_of(rel);
  for (const auto& p : tuples)
    for (const auto& q : tuples) {
      Pt joined(p.size());
      for (std::size_t k = 0; k < p.size(); ++k)
        joined[k] = whole.factors()[k]->lattice_join(p[k], q[k]);
      if (!tuples.count(joined))
        return false;
    }
  return true;
}

// --- Random lattice material ---------------------------------------------

DomainPtr random_tree_domain(std::mt19937& rng, int tag, int max_nodes = 8) {
  int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_nodes - 1));
  std::vector<TreeNode> nodes(n);
  for (int i = 0; i < n; ++i)
    nodes[i].label = "e" + std::to_string(i);
  std::vector<int> parent(n, -1);
  for (int i = 1; i < n; ++i)
    parent[i] = static_cast<int>(rng() % static_cast<unsigned>(i));
  for (int i = n - 1; i >= 1; --i)
    nodes[parent[i]].children.push_back(std::move(nodes[i]));
  return make_domain(AtomicDomain::from_tree("lat" + std::to_string(tag), nodes[0]));
}

std::vector<int> random_closed(std::mt19937& rng, const DomainPtr& d) {
  int n = d->lattice_size();
  std::set<int> s;
  int seeds = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < seeds; ++i)
    s.insert(static_cast<int>(rng() % static_cast<unsigned>(n)));
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a : std::vector<int>(s.begin(), s.end()))
      for (int b : std::vector<int>(s.begin(), s.end()))
        if (s.insert(d->lattice_join(a, b)).second)
          grew = true;
  }
  return {s.begin(), s.end()};
}

Relation random_relation(std::mt19937& rng, const Space& src, const Space& tgt) {
  int ncells = 1 + static_cast<int>(rng() % 3);
  std::vector<Cell> cells;
  for (int c = 0; c < ncells; ++c) {
    Cell cell;
    for (const auto& f : src.factors())
      cell.components.push_back(ConvexSet::lattice_set(f, random_closed(rng, f)));
    for (const auto& f : tgt.factors())
      cell.components.push_back(ConvexSet::lattice_set(f, random_closed(rng, f)));
    cells.push_back(std::move(cell));
  }
  return Relation::from_cells(src, tgt, std::move(cells));
}

// --- Continuous helpers for the two-phase pins ---------------------------

DomainPtr plane() {
  static DomainPtr d = make_domain(
      AtomicDomain("plane", AtomicDomain::Continuous{{Interval(0, 10), Interval(0, 10)}}));
  return d;
}

ConvexSet tri(std::vector<ContinuousPoint> vertices) {
  return ConvexSet::polytope(plane(), std::move(vertices));
}

DomainPtr chain3() {
  // c0 < c1 < c2, join = the higher element
  static DomainPtr d = [] {
    TreeNode bot{"c0", {}};
    TreeNode mid{"c1", {bot}};
    TreeNode top{"c2", {mid}};
    return make_domain(AtomicDomain::from_tree("chain3", top));
  }();
  return d;
}

} // namespace

// --- Deterministic lattice checks ----------------------------------------

TEST_CASE("space algebra: unit, tensor, equality, printing") {
  Space n = testsupport::noun_space();
  Space s = testsupport::sentence_space();
  CHECK(Space::unit().is_unit());
  CHECK(Space::unit().size() == 0);
  CHECK(n.size() == 3);
  CHECK(n.tensor(s).size() == 4);
  CHECK(n.tensor(Space::unit()) == n);
  CHECK(Space::unit().tensor(n) == n);
  CHECK(n != s);
  CHECK(n.tensor(s) != s.tensor(n));
  CHECK(n.to_string() == "colour*taste*texture");
  CHECK(Space::unit().to_string() == "I");
  CHECK_FALSE(n.all_lattice());
  CHECK(s.all_lattice());
}

TEST_CASE("cell validation rejects wrong arity and wrong domains") {
  Space n = testsupport::noun_space();
  Cell short_cell{{testsupport::banana_colour()}};
  CHECK_THROWS_MATCHES(Relation::state(n, {short_cell}), Error,
                       ErrorKindIs(ErrorKind::SpaceMismatch));
  Cell scrambled{{testsupport::banana_taste(), testsupport::banana_colour(),
                  testsupport::banana_texture()}};
  CHECK_THROWS_MATCHES(Relation::state(n, {scrambled}), Error,
                       ErrorKindIs(ErrorKind::SpaceMismatch));
}

TEST_CASE("cell canonicalization drops factor-wise subsumed cells") {
  Space s = testsupport::sentence_space();
  Cell big{{testsupport::sentence_set({"(0,0)", "(0,1)", "(1,0)", "(1,1)"})}};
  Cell small{{testsupport::sentence_set({"(0,1)"})}};
  auto canon = canonicalize_cells({small, big});
  REQUIRE(canon.size() == 1);
  CHECK(cell_equal(canon[0], big));
  CHECK(cell_lists_equivalent({small, big}, {big}));
  CHECK_FALSE(cell_lists_equivalent({small}, {big}));
}

TEST_CASE("composition over the sentence lattice matches hand enumeration") {
  Space s = testsupport::sentence_space();
  auto set = [&](std::vector<std::string> names) {
    return testsupport::sentence_set(names);
  };
  // r relates {(0,0),(0,1)} to (1,1); t relates (1,1) to {(1,0),(1,1)}
  auto r = Relation::from_cells(s, s, {Cell{{set({"(0,0)", "(0,1)"}), set({"(1,1)"})}}});
  auto t = Relation::from_cells(s, s, {Cell{{set({"(1,1)"}), set({"(1,0)", "(1,1)"})}}});
  auto rt = compose(r, t);
  REQUIRE(rt.is_cells());
  REQUIRE(rt.cells().size() == 1);
  CHECK(cell_equal(rt.cells()[0], Cell{{set({"(0,0)", "(0,1)"}), set({"(1,0)", "(1,1)"})}}));
  CHECK(pairs_of(rt) == o_compose(pairs_of(r), pairs_of(t)));
  // disjoint middles compose to the empty relation
  auto u = Relation::from_cells(s, s, {Cell{{set({"(0,0)"}), set({"(0,0)"})}}});
  CHECK(compose(r, u).cells().empty());
}

TEST_CASE("structural maps materialize to their defining pair sets") {
  Space s = testsupport::sentence_space();
  CHECK(pairs_of(Relation::identity(s)) == o_identity(s));
  CHECK(pairs_of(Relation::cap(s)) == o_cap(s));
  CHECK(pairs_of(Relation::cup(s)) == o_cup(s));
  CHECK(pairs_of(Relation::copy(s)) == o_copy(s));
  CHECK(pairs_of(Relation::merge(s)) == o_merge(s));
  CHECK(pairs_of(Relation::discard(s)) == o_delete(s));
  CHECK(converse(Relation::cap(s)) == Relation::cup(s));
  CHECK(converse(Relation::copy(s)) == Relation::merge(s));

  auto one_cell = Relation::from_cells(
      s, s, {Cell{{testsupport::sentence_set({"(0,1)"}),
                   testsupport::sentence_set({"(1,0)", "(1,1)"})}}});
  CHECK(pairs_of(converse(one_cell)) == o_converse(pairs_of(one_cell)));
}

TEST_CASE("unit-space degenerate cases collapse to the unit relation") {
  Space s = testsupport::sentence_space();
  auto unit_rel = Relation::from_cells(Space::unit(), Space::unit(), {Cell{}});
  CHECK(Relation::identity(Space::unit()) == unit_rel);
  CHECK(Relation::cap(Space::unit()) == unit_rel);
  CHECK(Relation::merge(Space::unit()) == unit_rel);
  auto x = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,0)"})}}});
  CHECK(tensor(x, Relation::identity(Space::unit())) == x);
  CHECK(tensor(Relation::identity(Space::unit()), x) == x);
}

TEST_CASE("cup on two lattice states detects a shared point") {
  Space s = testsupport::sentence_space();
  auto x = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,0)"})}}});
  auto y = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,0)", "(1,1)"})}}});
  auto z = Relation::state(s, {Cell{{testsupport::sentence_set({"(0,1)"})}}});
  CHECK_FALSE(compose(tensor(x, y), Relation::cup(s)).cells().empty());
  CHECK(compose(tensor(x, z), Relation::cup(s)).cells().empty());
}

// --- Continuous pipeline pins --------------------------------------------

TEST_CASE("restricted diagonal picks the yellow part of the banana region") {
  Space n = testsupport::noun_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  Cell yellow_lifted{{testsupport::yellow_colour(), ConvexSet::full(testsupport::taste_domain()),
                      ConvexSet::full(testsupport::texture_domain())}};
  auto adjective = Relation::diagonal(n, {yellow_lifted});
  auto result = compose(banana, adjective);
  CHECK(result == Relation::state(n, {testsupport::yellow_banana_cell()}));
}

TEST_CASE("wire plan contracting an adjective cap against its noun") {
  Space n = testsupport::noun_space();
  Cell yellow_lifted{{testsupport::yellow_colour(), ConvexSet::full(testsupport::taste_domain()),
                      ConvexSet::full(testsupport::texture_domain())}};
  auto adjective = Relation::cap_restricted(n, {yellow_lifted});
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  WirePlan plan{{n, n, n}, {{1, 2}}, {0}, {}};
  auto result = apply_wire_plan(plan, {adjective, banana});
  CHECK(result == Relation::state(n, {testsupport::yellow_banana_cell()}));
}

TEST_CASE("merge of the fruit region with the green-banana region") {
  Space n = testsupport::noun_space();
  auto fruit = Relation::state(n, {testsupport::fruit_cell()});
  auto green_banana = Relation::state(n, {testsupport::green_banana_cell()});
  auto merged = compose(tensor(fruit, green_banana), Relation::merge(n));
  CHECK(merged == green_banana);
}

TEST_CASE("Frobenius specialness and copy-as-restricted-cap on a continuous state") {
  Space n = testsupport::noun_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  CHECK(compose(banana, Relation::copy(n)) ==
        Relation::cap_restricted(n, {testsupport::banana_cell()}));
  CHECK(compose(compose(banana, Relation::copy(n)), Relation::merge(n)) == banana);
  CHECK(compose(tensor(banana, banana), Relation::merge(n)) == banana);
  CHECK(compose(banana, Relation::discard(n)) ==
        Relation::from_cells(Space::unit(), Space::unit(), {Cell{}}));
  CHECK(converse(Relation::cap(n)) == Relation::cup(n));
  CHECK(converse(converse(banana)) == banana);
}

TEST_CASE("snake contraction returns a continuous state unchanged") {
  Space n = testsupport::noun_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  WirePlan left{{n, n, n}, {{0, 1}}, {2}, {}};
  CHECK(apply_wire_plan(left, {banana, Relation::cap(n)}) == banana);
  WirePlan right{{n, n, n}, {{1, 2}}, {0}, {}};
  CHECK(apply_wire_plan(right, {Relation::cap(n), banana}) == banana);
}

TEST_CASE("tensor of noun and verb states multiplies cells") {
  Space n = testsupport::noun_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  auto verb = Relation::state(testsupport::verb_space(), testsupport::taste_verb_cells());
  auto both = tensor(banana, verb);
  CHECK(both.cells().size() == 5);
  CHECK(both.target() == n.tensor(testsupport::verb_space()));
}

TEST_CASE("plans without contractions pass states through and omitted wires delete") {
  Space n = testsupport::noun_space();
  Space s = testsupport::sentence_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  auto value = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,1)"})}}});
  WirePlan keep{{n}, {}, {0}, {}};
  CHECK(apply_wire_plan(keep, banana) == banana);
  WirePlan drop_first{{n, s}, {}, {1}, {}};
  CHECK(apply_wire_plan(drop_first, {banana, value}) == value);
}

// --- Two-phase evaluation order ------------------------------------------

TEST_CASE("a branch killed by any factor is dropped before intersections run") {
  // Wires 0,1 carry polytopes whose intersection the engine cannot
  // materialize; wires 2,3 carry disjoint intervals. The disjoint pair
  // must veto the branch before the fused pair attempts to intersect.
  Space p({plane()});
  Space t({testsupport::texture_domain()});
  auto tri_a = tri({{rat(0), rat(0)}, {rat(4), rat(0)}, {rat(0), rat(4)}});
  auto tri_b = tri({{rat(1), rat(1)}, {rat(5), rat(1)}, {rat(1), rat(5)}});
  REQUIRE(meets(tri_a, tri_b));
  REQUIRE_THROWS_MATCHES(intersect(tri_a, tri_b), Error,
                         ErrorKindIs(ErrorKind::UnsupportedIntersection));
  Cell wide{{tri_a, tri_b, testsupport::texture_box(0, rat(1, 4)),
             testsupport::texture_box(rat(1, 2), rat(3, 4))}};
  auto state = Relation::state(p.tensor(p).tensor(t).tensor(t), {wide});

  WirePlan plan{{p, p, t, t}, {{2, 3}}, {0}, {{{0, 1}}}};
  auto result = apply_wire_plan(plan, state);
  CHECK(result.cells().empty()); // dropped in the meets phase, no error

  // Without the vetoing pair the fused intersection genuinely runs and
  // its unsupported shape surfaces as an error.
  Cell narrow{{tri_a, tri_b}};
  auto pair_state = Relation::state(p.tensor(p), {narrow});
  WirePlan fuse_only{{p, p}, {}, {0}, {{{0, 1}}}};
  CHECK_THROWS_MATCHES(apply_wire_plan(fuse_only, pair_state), Error,
                       ErrorKindIs(ErrorKind::UnsupportedIntersection));
}

TEST_CASE("an empty three-way intersection drops the branch after pairwise meets pass") {
  Space c({chain3()});
  auto named = [&](std::vector<std::string> names) {
    return ConvexSet::lattice_set_named(chain3(), names);
  };
  // {c0,c1}, {c1,c2}, {c0,c2}: pairwise overlapping, nothing in common.
  Cell cell{{named({"c0", "c1"}), named({"c1", "c2"}), named({"c0", "c2"})}};
  auto state = Relation::state(c.tensor(c).tensor(c), {cell});
  WirePlan plan{{c, c, c}, {}, {0}, {{{0, 1, 2}}}};
  CHECK(apply_wire_plan(plan, state).cells().empty());
}

// --- Plan validation ------------------------------------------------------

TEST_CASE("malformed plans are rejected") {
  Space s = testsupport::sentence_space();
  Space n = testsupport::noun_space();
  auto x = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,0)"})}}});
  CHECK_THROWS_MATCHES(check_plan(WirePlan{{s, s}, {{0, 2}}, {}, {}}), Error,
                       ErrorKindIs(ErrorKind::MalformedPlan));
  CHECK_THROWS_MATCHES(check_plan(WirePlan{{s, s}, {{0, 1}}, {0}, {}}), Error,
                       ErrorKindIs(ErrorKind::MalformedPlan));
  CHECK_THROWS_MATCHES(check_plan(WirePlan{{s, s}, {{0, 0}}, {}, {}}), Error,
                       ErrorKindIs(ErrorKind::MalformedPlan));
  CHECK_THROWS_MATCHES(check_plan(WirePlan{{s, n}, {{0, 1}}, {}, {}}), Error,
                       ErrorKindIs(ErrorKind::SpaceMismatch));
  CHECK_THROWS_MATCHES(check_plan(WirePlan{{s, n}, {}, {}, {{{0, 1}}}}), Error,
                       ErrorKindIs(ErrorKind::SpaceMismatch));
  // survivors in one contraction group cannot both be emitted
  auto y = x;
  CHECK_THROWS_MATCHES(
      apply_wire_plan(WirePlan{{s, s}, {}, {0, 1}, {{{0, 1}}}}, {x, y}), Error,
      ErrorKindIs(ErrorKind::MalformedPlan));
  // states must tile the wires exactly
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  CHECK_THROWS_MATCHES(
      apply_wire_plan(WirePlan{{Space({testsupport::colour_domain()})}, {}, {0}, {}},
                      banana),
      Error, ErrorKindIs(ErrorKind::SpaceMismatch));
}

// --- Convexity audit ------------------------------------------------------

TEST_CASE("audit: single product cells and join-closed unions are clean") {
  Space n = testsupport::noun_space();
  auto banana = Relation::state(n, {testsupport::banana_cell()});
  CHECK(convexity_audit(banana).clean());

  Space s = testsupport::sentence_space();
  auto closed = Relation::state(s, {Cell{{testsupport::sentence_set({"(1,1)"})}},
                                    Cell{{testsupport::sentence_set({"(1,0)"})}}});
  CHECK(convexity_audit(closed).clean()); // join (1,1) is present

  auto open = Relation::state(s, {Cell{{testsupport::sentence_set({"(0,1)"})}},
                                  Cell{{testsupport::sentence_set({"(1,0)"})}}});
  auto report = convexity_audit(open);
  REQUIRE_FALSE(report.clean()); // join (1,1) is missing
}

TEST_CASE("audit: the transitive verb's cross-cell mixtures escape its cells") {
  auto verb = Relation::state(testsupport::verb_space(), testsupport::taste_verb_cells());
  auto report = convexity_audit(verb);
  CHECK_FALSE(report.clean());
}

// --- Randomized oracle suite ----------------------------------------------

TEST_CASE("categorical laws agree with the pair-set oracle on random lattices") {
  std::mt19937 rng(37);
  int relations_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    DomainPtr dA = random_tree_domain(rng, trial * 10 + 0);
    DomainPtr dB = random_tree_domain(rng, trial * 10 + 1);
    DomainPtr dC = random_tree_domain(rng, trial * 10 + 2);
    DomainPtr dD = random_tree_domain(rng, trial * 10 + 3, 4);
    Space A({dA}), B({dB}), C({dC}), D({dD});
    if (trial % 5 == 0)
      A = Space({dA, dD}); // exercise multi-factor spaces with small sizes

    Relation r = random_relation(rng, A, B);
    Relation s = random_relation(rng, B, C);
    Relation t = random_relation(rng, C, D);
    relations_checked += 3;

    CHECK(pairs_of(compose(r, s)) == o_compose(pairs_of(r), pairs_of(s)));
    CHECK(compose(Relation::identity(A), r) == r);
    CHECK(compose(r, Relation::identity(B)) == r);
    CHECK(compose(compose(r, s), t) == compose(r, compose(s, t)));
    CHECK(converse(converse(r)) == r);
    CHECK(converse(compose(r, s)) == compose(converse(s), converse(r)));
    CHECK(pairs_of(converse(r)) == o_converse(pairs_of(r)));

    Relation rt = tensor(r, t);
    CHECK(rt.cells().size() == r.cells().size() * t.cells().size());
    CHECK(pairs_of(rt) == o_tensor(pairs_of(r), pairs_of(t)));

    CHECK(pairs_of(Relation::identity(A)) == o_identity(A));
    CHECK(pairs_of(Relation::cap(A)) == o_cap(A));
    CHECK(pairs_of(Relation::cup(A)) == o_cup(A));
    CHECK(pairs_of(Relation::copy(A)) == o_copy(A));
    CHECK(pairs_of(Relation::merge(A)) == o_merge(A));
    CHECK(pairs_of(Relation::discard(A)) == o_delete(A));

    Relation x = random_relation(rng, Space::unit(), A);
    Relation y = random_relation(rng, Space::unit(), A);
    relations_checked += 2;

    WirePlan snake_left{{A, A, A}, {{0, 1}}, {2}, {}};
    CHECK(apply_wire_plan(snake_left, {x, Relation::cap(A)}) == x);
    WirePlan snake_right{{A, A, A}, {{1, 2}}, {0}, {}};
    CHECK(apply_wire_plan(snake_right, {Relation::cap(A), x}) == x);

    CHECK(compose(compose(x, Relation::copy(A)), Relation::merge(A)) == x);
    CHECK(compose(Relation::copy(A), Relation::merge(A)) == Relation::identity(A));
    CHECK(compose(Relation::copy(A), tensor(Relation::discard(A), Relation::identity(A))) ==
          Relation::identity(A));
    CHECK(compose(Relation::copy(A), tensor(Relation::identity(A), Relation::discard(A))) ==
          Relation::identity(A));
    CHECK(compose(tensor(x, x), Relation::merge(A)) == x);

    auto xs = union_point_set(x.cells());
    auto ys = union_point_set(y.cells());
    bool shared = std::any_of(xs.begin(), xs.end(), [&](const Pt& p) { return ys.count(p); });
    CHECK(compose(tensor(x, y), Relation::cup(A)).cells().empty() == !shared);

    CHECK(convexity_audit(x).clean() == mix_closed(x));
    CHECK(convexity_audit(r).clean() == mix_closed(r));
    if (mix_closed(r) && mix_closed(s))
      CHECK(convexity_audit(compose(r, s)).clean());
  }
  CHECK(relations_checked >= 200);
}

TEST_CASE("wire-plan evaluation matches the brute-force relational image") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    DomainPtr d1 = random_tree_domain(rng, 5000 + trial * 10, 5);
    DomainPtr d2 = random_tree_domain(rng, 5000 + trial * 10 + 1, 5);
    auto pick = [&] { return (rng() % 2) ? d1 : d2; };

    std::vector<Space> wire_spaces;
    std::vector<Relation> states;
    std::vector<std::vector<Pt>> state_pts; // literal point sets per state
    int nblocks = 2 + static_cast<int>(rng() % 2);
    for (int b = 0; b < nblocks; ++b) {
      int kind = static_cast<int>(rng() % 4);
      if (kind == 0) {
        // cap over two wires with a random restriction union
        DomainPtr d = pick();
        Space base({d});
        std::vector<Cell> restriction;
        int nr = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < nr; ++i)
          restriction.push_back(Cell{{ConvexSet::lattice_set(d, random_closed(rng, d))}});
        std::set<Pt> pts;
        for (const auto& cell : restriction)
          for (int m : cell.components[0].as_lattice().members)
            pts.insert({m, m});
        states.push_back(Relation::cap_restricted(base, std::move(restriction)));
        wire_spaces.push_back(base);
        wire_spaces.push_back(base);
        state_pts.push_back({pts.begin(), pts.end()});
      } else {
        // a cells state over one or two single-factor wires
        int wires_here = 1 + static_cast<int>(rng() % 2);
        std::vector<DomainPtr> ds;
        for (int i = 0; i < wires_here; ++i) {
          ds.push_back(pick());
          wire_spaces.push_back(Space({ds.back()}));
        }
        Relation st = random_relation(rng, Space::unit(), Space(ds));
        auto pts = union_point_set(st.cells());
        states.push_back(std::move(st));
        state_pts.push_back({pts.begin(), pts.end()});
      }
    }

    int wires = static_cast<int>(wire_spaces.size());
    std::vector<int> offset(wires, 0);
    for (int i = 1; i < wires; ++i)
      offset[i] = offset[i - 1] + wire_spaces[i - 1].size();

    // random pairing among same-space wires, a chance of a fusion, and
    // survivors picked so that no contraction group emits two of them
    std::vector<int> order(wires);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> used(wires, false);
    std::vector<std::pair<int, int>> pairs;
    for (int a : order) {
      if (used[a] || rng() % 2)
        continue;
      for (int b : order) {
        if (b == a || used[b] || wire_spaces[a] != wire_spaces[b])
          continue;
        pairs.push_back({a, b});
        used[a] = used[b] = true;
        break;
      }
    }
    std::vector<std::vector<int>> fusions;
    if (rng() % 2) {
      // join two same-space wires (any role) into one group
      for (int a : order) {
        bool done = false;
        for (int b : order) {
          if (a != b && wire_spaces[a] == wire_spaces[b]) {
            fusions.push_back({a, b});
            done = true;
            break;
          }
        }
        if (done)
          break;
      }
    }

    // group wires exactly the way the engine will, then allow at most
    // one survivor per group
    std::vector<int> uf(wires);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int v) {
      while (uf[v] != v)
        v = uf[v] = uf[uf[v]];
      return v;
    };
    auto unite = [&](int a, int b) { uf[find(a)] = find(b); };
    for (const auto& [a, b] : pairs)
      unite(a, b);
    for (const auto& fusion : fusions)
      unite(fusion[0], fusion[1]);
    {
      int at = 0;
      for (const auto& st : states) {
        int span = st.target().size();
        bool is_cap = st.is_structural();
        int first = at, covered = 0;
        while (covered < span)
          covered += wire_spaces[at++].size();
        if (is_cap)
          unite(first, first + 1);
      }
    }
    std::vector<bool> group_has_survivor(wires, false);
    std::vector<int> survivors;
    for (int wv : order) {
      if (used[wv] || rng() % 3 == 0 || group_has_survivor[find(wv)])
        continue;
      group_has_survivor[find(wv)] = true;
      survivors.push_back(wv);
      used[wv] = true;
    }

    WirePlan plan{wire_spaces, pairs, survivors, fusions};
    auto result = apply_wire_plan(plan, states);

    // brute force: enumerate every joint point of the input states and
    // apply the contraction constraints literally
    std::set<Pt> expected;
    std::vector<std::size_t> idx(states.size(), 0);
    while (true) {
      Pt big;
      for (std::size_t si = 0; si < states.size(); ++si)
        big = cat(std::move(big), state_pts[si][idx[si]]);
      auto value = [&](int wire) {
        return Pt(big.begin() + offset[wire],
                  big.begin() + offset[wire] + wire_spaces[wire].size());
      };
      bool ok = true;
      for (const auto& [a, b] : pairs)
        if (value(a) != value(b))
          ok = false;
      for (const auto& fusion : fusions)
        for (int wfused : fusion)
          if (value(wfused) != value(fusion.front()))
            ok = false;
      if (ok) {
        Pt out;
        for (int sv : survivors)
          out = cat(std::move(out), value(sv));
        expected.insert(std::move(out));
      }
      std::size_t si = 0;
      for (; si < idx.size(); ++si) {
        if (++idx[si] < state_pts[si].size())
          break;
        idx[si] = 0;
      }
      if (si == idx.size())
        break;
    }

    CHECK(union_point_set(result.cells()) == expected);
  }
}
