// SPDX-License-Identifier: Apache-2.0
#include "convexsem/convex_set.hpp"

#include <algorithm>

#include "convexsem/errors.hpp"
#include "convexsem/lp.hpp"

namespace convexsem {

namespace {

void require_same_domain(const ConvexSet& a, const ConvexSet& b) {
  if (!same_domain(a.domain(), b.domain())) {
    fail(ErrorKind::DomainMismatch, "sets live on domains '" + a.domain()->name() +
                                        "' and '" + b.domain()->name() + "'");
  }
}

/// Solve the convex-combination system: is p a mixture of the given
/// points? Weights are nonnegative LP variables summing to one.
bool point_in_hull(const std::vector<ContinuousPoint>& points, const ContinuousPoint& p) {
  if (points.empty()) return false;
  const int n = static_cast<int>(points.size());
  const int dim = static_cast<int>(p.size());
  LpProblem lp;
  lp.num_vars = n;
  lp.nonneg.assign(n, true);
  for (int k = 0; k < dim; ++k) {
    LinearConstraint row;
    row.coeffs.resize(n);
    for (int i = 0; i < n; ++i) row.coeffs[i] = points[i][k];
    row.cmp = Cmp::Eq;
    row.rhs = p[k];
    lp.constraints.push_back(std::move(row));
  }
  LinearConstraint sum;
  sum.coeffs.assign(n, Scalar(1));
  sum.cmp = Cmp::Eq;
  sum.rhs = 1;
  lp.constraints.push_back(std::move(sum));
  return lp_feasible(lp).feasible;
}

/// LP encoding "x lies in a and in b" with x as the first `dim`
/// variables and one nonnegative weight block per polytope operand.
LpProblem build_intersection_lp(const ConvexSet& a, const ConvexSet& b) {
  const int dim = a.domain()->dimension();
  int num_vars = dim;
  auto reserve_weights = [&](const ConvexSet& s) {
    int offset = -1;
    if (s.is_polytope()) {
      offset = num_vars;
      num_vars += static_cast<int>(s.as_polytope().vertices.size());
    }
    return offset;
  };
  const int offset_a = reserve_weights(a);
  const int offset_b = reserve_weights(b);
  LpProblem lp;
  lp.num_vars = num_vars;
  lp.nonneg.assign(num_vars, false);
  for (int j = dim; j < num_vars; ++j) lp.nonneg[j] = true;
  auto add_membership = [&](const ConvexSet& s, int offset) {
    if (s.is_box()) {
      const auto& intervals = s.as_box().intervals;
      for (int k = 0; k < dim; ++k) {
        LinearConstraint low;
        low.coeffs.assign(num_vars, Scalar(0));
        low.coeffs[k] = 1;
        low.cmp = Cmp::GreaterEq;
        low.rhs = intervals[k].lo();
        lp.constraints.push_back(std::move(low));
        LinearConstraint high;
        high.coeffs.assign(num_vars, Scalar(0));
        high.coeffs[k] = 1;
        high.cmp = Cmp::LessEq;
        high.rhs = intervals[k].hi();
        lp.constraints.push_back(std::move(high));
      }
      return;
    }
    const auto& vertices = s.as_polytope().vertices;
    const int n = static_cast<int>(vertices.size());
    for (int k = 0; k < dim; ++k) {
      LinearConstraint row;
      row.coeffs.assign(num_vars, Scalar(0));
      row.coeffs[k] = -1;
      for (int i = 0; i < n; ++i) row.coeffs[offset + i] = vertices[i][k];
      row.cmp = Cmp::Eq;
      row.rhs = 0;
      lp.constraints.push_back(std::move(row));
    }
    LinearConstraint sum;
    sum.coeffs.assign(num_vars, Scalar(0));
    for (int i = 0; i < n; ++i) sum.coeffs[offset + i] = 1;
    sum.cmp = Cmp::Eq;
    sum.rhs = 1;
    lp.constraints.push_back(std::move(sum));
  };
  add_membership(a, offset_a);
  add_membership(b, offset_b);
  return lp;
}

std::vector<int> sorted_unique(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

} // namespace

ConvexSet ConvexSet::box(DomainPtr domain, std::vector<Interval> intervals) {
  if (!domain || !domain->is_continuous()) {
    fail(ErrorKind::DomainMismatch, "box shapes require a continuous domain");
  }
  const auto& bounds = domain->continuous().bounds;
  if (intervals.size() != bounds.size()) {
    fail(ErrorKind::MalformedInput, "box has " + std::to_string(intervals.size()) +
                                        " intervals on a " + std::to_string(bounds.size()) +
                                        "-dimensional domain");
  }
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (!bounds[k].contains(intervals[k])) {
      fail(ErrorKind::MalformedInput,
           "box coordinate " + std::to_string(k) + " exceeds the domain bounds");
    }
  }
  return ConvexSet(std::move(domain), Box{std::move(intervals)});
}

ConvexSet ConvexSet::polytope(DomainPtr domain, std::vector<ContinuousPoint> vertices) {
  if (!domain || !domain->is_continuous()) {
    fail(ErrorKind::DomainMismatch, "polytope shapes require a continuous domain");
  }
  if (vertices.empty()) fail(ErrorKind::MalformedInput, "polytope needs at least one vertex");
  const auto& bounds = domain->continuous().bounds;
  for (const auto& v : vertices) {
    if (v.size() != bounds.size()) {
      fail(ErrorKind::MalformedInput, "polytope vertex has wrong dimension");
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!bounds[k].contains(v[k])) {
        fail(ErrorKind::MalformedInput, "polytope vertex exceeds the domain bounds");
      }
    }
  }
  return ConvexSet(std::move(domain), Polytope{std::move(vertices)});
}

ConvexSet ConvexSet::lattice_set(DomainPtr domain, std::vector<int> members) {
  if (!domain || !domain->is_lattice()) {
    fail(ErrorKind::DomainMismatch, "lattice sets require a lattice domain");
  }
  members = sorted_unique(std::move(members));
  if (members.empty()) fail(ErrorKind::MalformedInput, "lattice set needs at least one member");
  const int size = domain->lattice_size();
  for (int m : members) {
    if (m < 0 || m >= size) fail(ErrorKind::MalformedInput, "lattice member index out of range");
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const int join = domain->lattice_join(members[i], members[j]);
      if (!std::binary_search(members.begin(), members.end(), join)) {
        fail(ErrorKind::MalformedInput,
             "lattice set is not join-closed: join of '" +
                 domain->lattice_element(members[i]) + "' and '" +
                 domain->lattice_element(members[j]) + "' is missing");
      }
    }
  }
  return ConvexSet(std::move(domain), LatticeSet{std::move(members)});
}

ConvexSet ConvexSet::lattice_set_named(DomainPtr domain,
                                       const std::vector<std::string>& members) {
  if (!domain || !domain->is_lattice()) {
    fail(ErrorKind::DomainMismatch, "lattice sets require a lattice domain");
  }
  std::vector<int> indices;
  indices.reserve(members.size());
  for (const auto& name : members) {
    const int idx = domain->lattice_index(name);
    if (idx < 0) {
      fail(ErrorKind::MalformedInput,
           "domain '" + domain->name() + "' has no element '" + name + "'");
    }
    indices.push_back(idx);
  }
  return lattice_set(std::move(domain), std::move(indices));
}

ConvexSet ConvexSet::full(DomainPtr domain) {
  if (!domain) fail(ErrorKind::MalformedInput, "null domain");
  if (domain->is_continuous()) {
    std::vector<Interval> bounds = domain->continuous().bounds;
    return ConvexSet(std::move(domain), Box{std::move(bounds)});
  }
  std::vector<int> members(domain->lattice_size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = static_cast<int>(i);
  return ConvexSet(std::move(domain), LatticeSet{std::move(members)});
}

const ConvexSet::Box& ConvexSet::as_box() const {
  if (!is_box()) fail(ErrorKind::MalformedInput, "set is not a box");
  return std::get<Box>(shape_);
}

const ConvexSet::Polytope& ConvexSet::as_polytope() const {
  if (!is_polytope()) fail(ErrorKind::MalformedInput, "set is not a polytope");
  return std::get<Polytope>(shape_);
}

const ConvexSet::LatticeSet& ConvexSet::as_lattice() const {
  if (!is_lattice()) fail(ErrorKind::MalformedInput, "set is not a lattice set");
  return std::get<LatticeSet>(shape_);
}

std::vector<Point> ConvexSet::extreme_points() const {
  std::vector<Point> out;
  if (is_lattice()) {
    for (int m : as_lattice().members) out.emplace_back(m);
    return out;
  }
  std::vector<ContinuousPoint> points;
  if (is_polytope()) {
    points = as_polytope().vertices;
  } else {
    const auto& intervals = as_box().intervals;
    const int dim = static_cast<int>(intervals.size());
    const unsigned corners = 1u << dim;
    for (unsigned mask = 0; mask < corners; ++mask) {
      ContinuousPoint p(dim);
      for (int k = 0; k < dim; ++k) {
        p[k] = (mask >> k) & 1u ? intervals[k].hi() : intervals[k].lo();
      }
      points.push_back(std::move(p));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (auto& p : points) out.emplace_back(std::move(p));
  return out;
}

Interval ConvexSet::coordinate_extent(int k) const {
  if (!domain_->is_continuous()) {
    fail(ErrorKind::DomainMismatch, "coordinate extents only exist on continuous domains");
  }
  if (k < 0 || k >= domain_->dimension()) {
    fail(ErrorKind::MalformedInput, "coordinate index out of range");
  }
  if (is_box()) return as_box().intervals[k];
  const auto& vertices = as_polytope().vertices;
  Scalar lo = vertices.front()[k];
  Scalar hi = lo;
  for (const auto& v : vertices) {
    lo = std::min(lo, v[k]);
    hi = std::max(hi, v[k]);
  }
  return Interval(lo, hi);
}

bool member(const ConvexSet& set, const Point& point) {
  if (!domain_contains(*set.domain(), point)) {
    fail(ErrorKind::DomainMismatch,
         "point does not lie in domain '" + set.domain()->name() + "'");
  }
  if (set.is_lattice()) {
    const auto& members = set.as_lattice().members;
    return std::binary_search(members.begin(), members.end(), std::get<int>(point));
  }
  const auto& p = std::get<ContinuousPoint>(point);
  if (set.is_box()) {
    const auto& intervals = set.as_box().intervals;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      if (!intervals[k].contains(p[k])) return false;
    }
    return true;
  }
  return point_in_hull(set.as_polytope().vertices, p);
}

bool meets(const ConvexSet& a, const ConvexSet& b) {
  require_same_domain(a, b);
  if (a.is_lattice()) {
    const auto& ma = a.as_lattice().members;
    const auto& mb = b.as_lattice().members;
    std::vector<int> common;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(),
                          std::back_inserter(common));
    return !common.empty();
  }
  const int dim = a.domain()->dimension();
  if (a.is_box() && b.is_box()) {
    const auto& ia = a.as_box().intervals;
    const auto& ib = b.as_box().intervals;
    for (int k = 0; k < dim; ++k) {
      const Scalar lo = std::max(ia[k].lo(), ib[k].lo());
      const Scalar hi = std::min(ia[k].hi(), ib[k].hi());
      if (lo > hi) return false;
      if (lo == hi && !ia[k].degenerate() && !ib[k].degenerate()) return false;
    }
    return true;
  }
  const LpProblem lp = build_intersection_lp(a, b);
  LpFeasibility feas = lp_feasible(lp);
  if (!feas.feasible) return false;
  // Witnesses collected below all lie in the intersection; coordinate k
  // has positive extent as soon as two of them differ there.
  std::vector<std::vector<Scalar>> witnesses;
  auto record = [&](const std::vector<Scalar>& full) {
    witnesses.emplace_back(full.begin(), full.begin() + dim);
  };
  record(feas.witness);
  auto coord_varies = [&](int k) {
    for (std::size_t i = 1; i < witnesses.size(); ++i) {
      if (witnesses[i][k] != witnesses[0][k]) return true;
    }
    return false;
  };
  for (int k = 0; k < dim; ++k) {
    if (a.coordinate_extent(k).degenerate() || b.coordinate_extent(k).degenerate()) continue;
    if (coord_varies(k)) continue;
    std::vector<Scalar> objective(lp.num_vars, Scalar(0));
    objective[k] = 1;
    record(lp_maximize(lp, objective).point);
    if (coord_varies(k)) continue;
    record(lp_minimize(lp, objective).point);
    if (!coord_varies(k)) return false;
  }
  return true;
}

ConvexSet intersect(const ConvexSet& a, const ConvexSet& b) {
  require_same_domain(a, b);
  if (!meets(a, b)) {
    fail(ErrorKind::EmptyIntersection,
         "regions on '" + a.domain()->name() + "' do not overlap");
  }
  if (a.is_lattice()) {
    const auto& ma = a.as_lattice().members;
    const auto& mb = b.as_lattice().members;
    std::vector<int> common;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(),
                          std::back_inserter(common));
    return ConvexSet::lattice_set(a.domain(), std::move(common));
  }
  if (a.is_box() && b.is_box()) {
    const auto& ia = a.as_box().intervals;
    const auto& ib = b.as_box().intervals;
    std::vector<Interval> intervals;
    intervals.reserve(ia.size());
    for (std::size_t k = 0; k < ia.size(); ++k) {
      intervals.emplace_back(std::max(ia[k].lo(), ib[k].lo()),
                             std::min(ia[k].hi(), ib[k].hi()));
    }
    return ConvexSet::box(a.domain(), std::move(intervals));
  }
  if (subset(a, b)) return a;
  if (subset(b, a)) return b;
  fail(ErrorKind::UnsupportedIntersection,
       "general polytope intersections on '" + a.domain()->name() +
           "' are not materialized");
}

bool subset(const ConvexSet& a, const ConvexSet& b) {
  require_same_domain(a, b);
  if (a.is_lattice()) {
    const auto& ma = a.as_lattice().members;
    const auto& mb = b.as_lattice().members;
    return std::includes(mb.begin(), mb.end(), ma.begin(), ma.end());
  }
  for (const Point& p : a.extreme_points()) {
    if (!member(b, p)) return false;
  }
  return true;
}

ConvexSet hull(const DomainPtr& domain, const std::vector<ConvexSet>& parts) {
  if (parts.empty()) fail(ErrorKind::MalformedInput, "hull of an empty part list");
  for (const auto& part : parts) {
    if (!same_domain(part.domain(), domain)) {
      fail(ErrorKind::DomainMismatch, "hull parts must share one domain");
    }
  }
  if (parts.size() == 1) return parts.front();
  if (domain->is_lattice()) {
    std::vector<int> members;
    for (const auto& part : parts) {
      const auto& m = part.as_lattice().members;
      members.insert(members.end(), m.begin(), m.end());
    }
    members = sorted_unique(std::move(members));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> joins;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          const int join = domain->lattice_join(members[i], members[j]);
          if (!std::binary_search(members.begin(), members.end(), join)) {
            joins.push_back(join);
          }
        }
      }
      if (!joins.empty()) {
        members.insert(members.end(), joins.begin(), joins.end());
        members = sorted_unique(std::move(members));
        grew = true;
      }
    }
    return ConvexSet::lattice_set(domain, std::move(members));
  }
  std::vector<ContinuousPoint> points;
  for (const auto& part : parts) {
    for (Point& p : part.extreme_points()) {
      points.push_back(std::get<ContinuousPoint>(std::move(p)));
    }
  }
  return ConvexSet::polytope(domain, canonicalize_vertices(std::move(points)));
}

std::vector<ContinuousPoint> canonicalize_vertices(std::vector<ContinuousPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::size_t i = 0;
  while (points.size() > 1 && i < points.size()) {
    std::vector<ContinuousPoint> others;
    others.reserve(points.size() - 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i) others.push_back(points[j]);
    }
    if (point_in_hull(others, points[i])) {
      points.erase(points.begin() + i);
    } else {
      ++i;
    }
  }
  return points;
}

bool operator==(const ConvexSet& a, const ConvexSet& b) {
  if (!same_domain(a.domain(), b.domain())) return false;
  if (a.is_box() && b.is_box()) return a.as_box().intervals == b.as_box().intervals;
  if (a.is_lattice() && b.is_lattice()) return a.as_lattice().members == b.as_lattice().members;
  if (a.is_lattice() != b.is_lattice()) return false;
  return subset(a, b) && subset(b, a);
}

bool operator!=(const ConvexSet& a, const ConvexSet& b) { return !(a == b); }

bool is_full(const ConvexSet& set) { return set == ConvexSet::full(set.domain()); }

std::string set_to_string(const ConvexSet& set, bool machine) {
  auto num = [machine](const Scalar& s) {
    return machine ? scalar_machine(s) : scalar_human(s);
  };
  std::string out;
  if (set.is_box()) {
    const auto& intervals = set.as_box().intervals;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      if (k > 0) out += "x";
      out += "[" + num(intervals[k].lo()) + "," + num(intervals[k].hi()) + "]";
    }
    return out;
  }
  if (set.is_polytope()) {
    out = "hull{";
    const auto& vertices = set.as_polytope().vertices;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i > 0) out += " ";
      out += "(";
      for (std::size_t k = 0; k < vertices[i].size(); ++k) {
        if (k > 0) out += ",";
        out += num(vertices[i][k]);
      }
      out += ")";
    }
    return out + "}";
  }
  out = "{";
  const auto& members = set.as_lattice().members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) out += ",";
    out += set.domain()->lattice_element(members[i]);
  }
  return out + "}";
}

} // namespace convexsem
