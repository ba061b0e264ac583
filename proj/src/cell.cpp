// SPDX-License-Identifier: Apache-2.0
#include "convexsem/cell.hpp"

#include <utility>

#include "convexsem/errors.hpp"

namespace convexsem {

void check_cell(const Cell& cell, const Space& space, const std::string& what) {
  if (cell.size() != space.size())
    fail(ErrorKind::SpaceMismatch, what + ": cell has " + std::to_string(cell.size()) +
                                       " components but space " + space.to_string() + " has " +
                                       std::to_string(space.size()) + " factors");
  for (int i = 0; i < cell.size(); ++i)
    if (!same_domain(cell.components[i].domain(), space.factors()[i]))
      fail(ErrorKind::SpaceMismatch, what + ": component " + std::to_string(i + 1) + " is on '" +
                                         cell.components[i].domain()->name() + "' but factor " +
                                         std::to_string(i + 1) + " of " + space.to_string() +
                                         " is '" + space.factors()[i]->name() + "'");
}

Cell full_cell(const Space& space) {
  Cell cell;
  cell.components.reserve(space.factors().size());
  for (const auto& f : space.factors())
    cell.components.push_back(ConvexSet::full(f));
  return cell;
}

Cell concat_cells(const Cell& a, const Cell& b) {
  Cell out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return out;
}

Cell slice_cell(const Cell& cell, int begin, int end) {
  Cell out;
  out.components.assign(cell.components.begin() + begin, cell.components.begin() + end);
  return out;
}

bool cell_subsumes(const Cell& b, const Cell& a) {
  if (a.size() != b.size())
    return false;
  for (int i = 0; i < a.size(); ++i)
    if (!subset(a.components[i], b.components[i]))
      return false;
  return true;
}

bool cell_equal(const Cell& a, const Cell& b) {
  if (a.size() != b.size())
    return false;
  for (int i = 0; i < a.size(); ++i)
    if (a.components[i] != b.components[i])
      return false;
  return true;
}

bool cell_meets(const Cell& a, const Cell& b) {
  for (int i = 0; i < a.size(); ++i)
    if (!meets(a.components[i], b.components[i]))
      return false;
  return true;
}

Cell cell_intersect(const Cell& a, const Cell& b) {
  Cell out;
  out.components.reserve(a.components.size());
  for (int i = 0; i < a.size(); ++i)
    out.components.push_back(intersect(a.components[i], b.components[i]));
  return out;
}

std::string cell_to_string(const Cell& cell, bool machine) {
  if (cell.components.empty())
    return "*";
  std::string out;
  for (int i = 0; i < cell.size(); ++i) {
    if (i > 0)
      out += " x ";
    out += set_to_string(cell.components[i], machine);
  }
  return out;
}

std::vector<Cell> canonicalize_cells(std::vector<Cell> cells) {
  std::vector<Cell> kept;
  for (auto& cell : cells) {
    bool covered = false;
    for (const auto& k : kept)
      if (cell_subsumes(k, cell)) {
        covered = true;
        break;
      }
    if (covered)
      continue;
    std::erase_if(kept, [&](const Cell& k) { return cell_subsumes(cell, k); });
    kept.push_back(std::move(cell));
  }
  return kept;
}

bool cell_lists_equivalent(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  auto ca = canonicalize_cells(a);
  auto cb = canonicalize_cells(b);
  auto covered = [](const std::vector<Cell>& xs, const std::vector<Cell>& ys) {
    for (const auto& x : xs) {
      bool found = false;
      for (const auto& y : ys)
        if (cell_subsumes(y, x)) {
          found = true;
          break;
        }
      if (!found)
        return false;
    }
    return true;
  };
  return covered(ca, cb) && covered(cb, ca);
}

} // namespace convexsem
