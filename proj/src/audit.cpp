// SPDX-License-Identifier: Apache-2.0
#include "convexsem/audit.hpp"

#include <set>

namespace convexsem {

namespace {

/// All lattice points (element-index tuples) of a cell union over an
/// all-lattice space.
std::set<std::vector<int>> union_points(const std::vector<Cell>& cells) {
  std::set<std::vector<int>> out;
  for (const auto& cell : cells) {
    if (cell.components.empty()) {
      out.insert({});
      continue;
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
  return out;
}

std::string lattice_point_name(const Space& space, const std::vector<int>& point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i > 0)
      out += " x ";
    out += space.factors()[i]->lattice_element(point[i]);
  }
  return out.empty() ? "*" : out;
}

/// A representative point of a cell: componentwise the first extreme
/// point (which == 0), the last (which == 1), or the centroid / join of
/// all extreme points (which == 2).
std::vector<Point> sample_point(const Cell& cell, int which) {
  std::vector<Point> out;
  out.reserve(cell.components.size());
  for (const auto& component : cell.components) {
    if (component.is_lattice()) {
      const auto& members = component.as_lattice().members;
      if (which == 0)
        out.push_back(members.front());
      else if (which == 1)
        out.push_back(members.back());
      else {
        int joined = members.front();
        for (int m : members)
          joined = component.domain()->lattice_join(joined, m);
        out.push_back(joined);
      }
      continue;
    }
    auto extremes = component.extreme_points();
    if (which == 0)
      out.push_back(extremes.front());
    else if (which == 1)
      out.push_back(extremes.back());
    else {
      ContinuousPoint centroid(component.domain()->dimension(), Scalar(0));
      for (const auto& p : extremes) {
        const auto& coords = std::get<ContinuousPoint>(p);
        for (std::size_t k = 0; k < coords.size(); ++k)
          centroid[k] += coords[k];
      }
      for (auto& c : centroid)
        c /= Scalar(static_cast<int>(extremes.size()));
      out.push_back(std::move(centroid));
    }
  }
  return out;
}

/// The even mixture of two points: coordinate-wise midpoint on
/// continuous factors, join on lattice factors.
std::vector<Point> mix_points(const Space& space, const std::vector<Point>& a,
                              const std::vector<Point>& b) {
  std::vector<Point> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& factor = space.factors()[i];
    if (factor->is_lattice()) {
      out.push_back(factor->lattice_join(std::get<int>(a[i]), std::get<int>(b[i])));
      continue;
    }
    const auto& pa = std::get<ContinuousPoint>(a[i]);
    const auto& pb = std::get<ContinuousPoint>(b[i]);
    ContinuousPoint mid(pa.size());
    for (std::size_t k = 0; k < pa.size(); ++k)
      mid[k] = (pa[k] + pb[k]) / 2;
    out.push_back(std::move(mid));
  }
  return out;
}

bool cell_contains_point(const Cell& cell, const std::vector<Point>& point) {
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!member(cell.components[i], point[i]))
      return false;
  return true;
}

std::string point_name(const Space& space, const std::vector<Point>& point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i > 0)
      out += " x ";
    out += point_to_string(*space.factors()[i], point[i]);
  }
  return out.empty() ? "*" : out;
}

} // namespace

AuditReport convexity_audit(const Relation& state) {
  if (state.is_structural()) {
    // A structural node's point set is the (multi-)diagonal over its
    // restriction, and mixtures stay on the diagonal; so the node is
    // mix-closed exactly when its restriction union is.
    const auto& node = state.structural();
    return convexity_audit(Relation::state(node.base, node.restriction));
  }

  AuditReport report;
  const auto& cells = state.cells();
  if (cells.size() <= 1)
    return report; // a single product cell of convex regions is convex

  Space space = state.source().tensor(state.target());
  if (space.all_lattice()) {
    auto points = union_points(cells);
    auto contains = [&](const std::vector<int>& p) {
      for (const auto& cell : cells) {
        bool inside = true;
        for (std::size_t i = 0; i < p.size() && inside; ++i)
          inside = member(cell.components[i], p[i]);
        if (inside)
          return true;
      }
      return false;
    };
    for (auto it = points.begin(); it != points.end(); ++it)
      for (auto jt = std::next(it); jt != points.end(); ++jt) {
        std::vector<int> joined(it->size());
        for (std::size_t k = 0; k < joined.size(); ++k)
          joined[k] = space.factors()[k]->lattice_join((*it)[k], (*jt)[k]);
        if (!contains(joined))
          report.issues.push_back({"join of " + lattice_point_name(space, *it) + " and " +
                                   lattice_point_name(space, *jt) + " lies in no cell"});
      }
    return report;
  }

  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      bool witnessed = false;
      for (int si = 0; si < 3 && !witnessed; ++si)
        for (int sj = 0; sj < 3 && !witnessed; ++sj) {
          auto a = sample_point(cells[i], si);
          auto b = sample_point(cells[j], sj);
          auto mid = mix_points(space, a, b);
          bool inside = false;
          for (const auto& cell : cells)
            if (cell_contains_point(cell, mid)) {
              inside = true;
              break;
            }
          if (!inside) {
            report.issues.push_back({"midpoint " + point_name(space, mid) + " of points from cells " +
                                     std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " lies in no cell"});
            witnessed = true; // one witness per cell pair keeps reports short
          }
        }
    }
  return report;
}

} // namespace convexsem
