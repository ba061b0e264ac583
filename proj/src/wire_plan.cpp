// SPDX-License-Identifier: Apache-2.0
#include "convexsem/wire_plan.hpp"

#include <numeric>
#include <optional>
#include <utility>

#include "convexsem/errors.hpp"

namespace convexsem {

void check_plan(const WirePlan& plan) {
  int wires = static_cast<int>(plan.wire_spaces.size());
  std::vector<int> uses(wires, 0);
  auto in_range = [&](int w) {
    if (w < 0 || w >= wires)
      fail(ErrorKind::MalformedPlan, "wire index " + std::to_string(w) + " out of range (" +
                                         std::to_string(wires) + " wires)");
  };
  auto touch = [&](int w) {
    in_range(w);
    if (++uses[w] > 1)
      fail(ErrorKind::MalformedPlan,
           "wire " + std::to_string(w) + " used more than once across pairs and survivors");
  };
  for (const auto& [a, b] : plan.pairs) {
    touch(a);
    touch(b);
    if (a == b)
      fail(ErrorKind::MalformedPlan, "wire " + std::to_string(a) + " paired with itself");
    if (plan.wire_spaces[a] != plan.wire_spaces[b])
      fail(ErrorKind::SpaceMismatch, "paired wires " + std::to_string(a) + " and " +
                                         std::to_string(b) + " carry different spaces (" +
                                         plan.wire_spaces[a].to_string() + " vs " +
                                         plan.wire_spaces[b].to_string() + ")");
  }
  for (int s : plan.survivors)
    touch(s);
  for (const auto& fusion : plan.fusions) {
    if (fusion.empty())
      fail(ErrorKind::MalformedPlan, "empty fusion group");
    for (int w : fusion) {
      in_range(w);
      if (plan.wire_spaces[w] != plan.wire_spaces[fusion.front()])
        fail(ErrorKind::SpaceMismatch,
             "fused wires " + std::to_string(fusion.front()) + " and " + std::to_string(w) +
                 " carry different spaces (" + plan.wire_spaces[fusion.front()].to_string() +
                 " vs " + plan.wire_spaces[w].to_string() + ")");
    }
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// One contraction group: the wires joined by cups, caps and fusions,
/// the cap states whose restrictions constrain the group, and (at most)
/// one surviving output slot.
struct Group {
  std::vector<int> wires; // wires fed by cells states, ascending
  std::vector<int> caps;  // indices of cap states attached to the group
  int output_slot = -1;
};

} // namespace

Relation apply_wire_plan(const WirePlan& plan, const std::vector<Relation>& states) {
  check_plan(plan);
  int wires = static_cast<int>(plan.wire_spaces.size());

  // Align each state with a contiguous run of whole wires. Cap nodes
  // stay lazy across exactly two wires; every other structural state
  // must be expandable into cells.
  std::vector<Relation> prepared;
  prepared.reserve(states.size());
  std::vector<int> wire_state(wires, -1);
  std::vector<int> wire_offset(wires, 0); // factor offset inside the state's cells
  struct CapBlock {
    int state;
    int first_wire;
  };
  std::vector<CapBlock> caps;
  int w = 0;
  for (std::size_t si = 0; si < states.size(); ++si) {
    const Relation& given = states[si];
    if (!given.source().is_unit())
      fail(ErrorKind::SpaceMismatch, "plan input " + std::to_string(si + 1) +
                                         " is not a state (source " +
                                         given.source().to_string() + ")");
    Relation use = given;
    if (given.is_structural() && given.structural().kind != Relation::StructuralKind::Cap)
      use = given.materialized();
    int need = use.target().size();
    int start = w;
    int have = 0;
    while (have < need) {
      if (w >= wires)
        fail(ErrorKind::SpaceMismatch, "states carry more factors than the plan has wires");
      wire_state[w] = static_cast<int>(si);
      wire_offset[w] = have;
      have += plan.wire_spaces[w].size();
      ++w;
    }
    if (have != need)
      fail(ErrorKind::SpaceMismatch,
           "state " + std::to_string(si + 1) + " does not end on a wire boundary");
    Space consumed;
    for (int k = start; k < w; ++k)
      consumed = consumed.tensor(plan.wire_spaces[k]);
    if (consumed != use.target())
      fail(ErrorKind::SpaceMismatch, "state " + std::to_string(si + 1) + " carries " +
                                         use.target().to_string() + " but its wires carry " +
                                         consumed.to_string());
    if (use.is_structural()) {
      const auto& node = use.structural();
      if (w - start == 2 && plan.wire_spaces[start] == node.base)
        caps.push_back({static_cast<int>(si), start});
      else
        use = use.materialized(); // throws on continuous bases
    }
    prepared.push_back(std::move(use));
  }
  if (w != wires)
    fail(ErrorKind::SpaceMismatch, "plan has more wires than the states provide");

  // Contraction groups: cup pairs, cap legs and fusions join wires.
  UnionFind uf(wires);
  for (const auto& [a, b] : plan.pairs)
    uf.unite(a, b);
  for (const auto& cap : caps)
    uf.unite(cap.first_wire, cap.first_wire + 1);
  for (const auto& fusion : plan.fusions)
    for (int wi : fusion)
      uf.unite(fusion.front(), wi);

  std::vector<Group> groups(wires);
  for (int i = 0; i < wires; ++i)
    if (prepared[wire_state[i]].is_cells())
      groups[uf.find(i)].wires.push_back(i);
  for (const auto& cap : caps)
    groups[uf.find(cap.first_wire)].caps.push_back(cap.state);
  for (std::size_t slot = 0; slot < plan.survivors.size(); ++slot) {
    Group& g = groups[uf.find(plan.survivors[slot])];
    if (g.output_slot >= 0)
      fail(ErrorKind::MalformedPlan,
           "two surviving wires are joined by the same contraction group");
    g.output_slot = static_cast<int>(slot);
  }

  Space out_space;
  for (int s : plan.survivors)
    out_space = out_space.tensor(plan.wire_spaces[s]);

  // Branches: one choice of cell per cells state, one restriction cell
  // per cap. An input with no cells denotes the empty state.
  std::vector<std::size_t> limits(prepared.size());
  for (std::size_t si = 0; si < prepared.size(); ++si)
    limits[si] = prepared[si].is_cells() ? prepared[si].cells().size()
                                         : prepared[si].structural().restriction.size();
  for (std::size_t limit : limits)
    if (limit == 0)
      return Relation::state(out_space, {});

  std::vector<Cell> result;
  std::vector<std::size_t> choice(prepared.size(), 0);
  while (true) {
    std::vector<Cell> block(wires); // chosen cells sliced per wire
    for (int i = 0; i < wires; ++i) {
      const Relation& st = prepared[wire_state[i]];
      if (st.is_cells())
        block[i] = slice_cell(st.cells()[choice[wire_state[i]]], wire_offset[i],
                              wire_offset[i] + plan.wire_spaces[i].size());
    }
    auto items_of = [&](const Group& g) {
      std::vector<const Cell*> items;
      for (int wi : g.wires)
        items.push_back(&block[wi]);
      for (int cs : g.caps)
        items.push_back(&prepared[cs].structural().restriction[choice[cs]]);
      return items;
    };

    // Phase one: every contraction group checks pairwise meets between
    // all of its members before any group commits to an intersection.
    bool alive = true;
    for (int root = 0; root < wires && alive; ++root) {
      const Group& g = groups[root];
      if (g.wires.empty() && g.caps.empty())
        continue;
      auto items = items_of(g);
      for (std::size_t i = 0; i < items.size() && alive; ++i)
        for (std::size_t j = i + 1; j < items.size() && alive; ++j)
          if (!cell_meets(*items[i], *items[j]))
            alive = false;
    }

    // Phase two: fold an exact intersection for every group that needs
    // one — groups with an output, and contraction-only groups of three
    // or more members, where pairwise overlap does not imply a common
    // point. Undecidable intersections are deferred so that decidable
    // emptiness anywhere in the branch drops it first.
    if (alive) {
      std::vector<Cell> merged(plan.survivors.size());
      std::optional<Error> undecidable;
      for (int root = 0; root < wires && alive; ++root) {
        const Group& g = groups[root];
        if (g.output_slot < 0 && g.wires.size() + g.caps.size() < 3)
          continue;
        auto items = items_of(g);
        if (items.empty()) {
          // a survivor with no feeding cells and no caps is unconstrained
          merged[g.output_slot] = full_cell(plan.wire_spaces[plan.survivors[g.output_slot]]);
          continue;
        }
        try {
          Cell value = *items.front();
          for (std::size_t i = 1; i < items.size(); ++i)
            value = cell_intersect(value, *items[i]);
          if (g.output_slot >= 0)
            merged[g.output_slot] = std::move(value);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::EmptyIntersection)
            alive = false;
          else if (e.kind() == ErrorKind::UnsupportedIntersection) {
            if (!undecidable)
              undecidable = e;
          } else {
            throw;
          }
        }
      }
      if (alive && undecidable)
        throw *undecidable;
      if (alive) {
        Cell out;
        for (auto& part : merged)
          out = concat_cells(out, part);
        result.push_back(std::move(out));
      }
    }

    std::size_t si = 0;
    for (; si < choice.size(); ++si) {
      if (++choice[si] < limits[si])
        break;
      choice[si] = 0;
    }
    if (si == choice.size())
      break;
  }

  return Relation::state(out_space, canonicalize_cells(std::move(result)));
}

Relation apply_wire_plan(const WirePlan& plan, const Relation& state) {
  return apply_wire_plan(plan, std::vector<Relation>{state});
}

} // namespace convexsem
