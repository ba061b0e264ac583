// SPDX-License-Identifier: Apache-2.0
#include "convexsem/domain.hpp"

#include <set>

namespace convexsem {

namespace {

// Exhaustive semilattice axioms; n^3 associativity checks, so cap the size.
constexpr int kMaxLatticeSize = 64;

void validate_join_table(const std::string& name, const AtomicDomain::Lattice& data) {
  const int n = static_cast<int>(data.elements.size());
  if (n == 0)
    fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' has no elements");
  if (n > kMaxLatticeSize)
    fail(ErrorKind::InputTooLarge, "lattice domain '" + name + "' exceeds " +
                                       std::to_string(kMaxLatticeSize) + " elements");
  std::set<std::string> seen(data.elements.begin(), data.elements.end());
  if (static_cast<int>(seen.size()) != n)
    fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' has duplicate element names");
  if (static_cast<int>(data.join.size()) != n)
    fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join table has wrong row count");
  for (const auto& row : data.join) {
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join table has wrong row width");
    for (int v : row)
      if (v < 0 || v >= n)
        fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join table entry out of range");
  }
  for (int a = 0; a < n; ++a) {
    if (data.join[a][a] != a)
      fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join not idempotent at " +
                                          data.elements[a]);
    for (int b = 0; b < n; ++b)
      if (data.join[a][b] != data.join[b][a])
        fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join not commutative at (" +
                                            data.elements[a] + "," + data.elements[b] + ")");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (data.join[a][data.join[b][c]] != data.join[data.join[a][b]][c])
          fail(ErrorKind::MalformedInput, "lattice domain '" + name + "' join not associative at (" +
                                              data.elements[a] + "," + data.elements[b] + "," +
                                              data.elements[c] + ")");
}

void collect_labels(const TreeNode& node, std::vector<std::string>& labels,
                    std::vector<int>& parent, int parent_index) {
  int index = static_cast<int>(labels.size());
  labels.push_back(node.label);
  parent.push_back(parent_index);
  for (const auto& child : node.children)
    collect_labels(child, labels, parent, index);
}

} // namespace

AtomicDomain::AtomicDomain(std::string name, Continuous data)
    : name_(std::move(name)), data_(std::move(data)) {
  if (std::get<Continuous>(data_).bounds.empty())
    fail(ErrorKind::MalformedInput, "continuous domain '" + name_ + "' has no dimensions");
}

AtomicDomain::AtomicDomain(std::string name, Lattice data)
    : name_(std::move(name)), data_(std::move(data)) {
  validate_join_table(name_, std::get<Lattice>(data_));
}

AtomicDomain AtomicDomain::tuple_max(std::string name, int k) {
  if (k < 1 || k > 6)
    fail(ErrorKind::MalformedInput, "tuplemax arity must be between 1 and 6");
  const int n = 1 << k;
  Lattice data;
  data.elements.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string label = "(";
    for (int bit = k - 1; bit >= 0; --bit) {
      label += ((i >> bit) & 1) ? '1' : '0';
      if (bit > 0) label += ',';
    }
    label += ')';
    data.elements.push_back(std::move(label));
  }
  data.join.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      data.join[a][b] = a | b; // element-wise max of bit tuples
  return AtomicDomain(std::move(name), std::move(data));
}

AtomicDomain AtomicDomain::from_tree(std::string name, const TreeNode& root) {
  std::vector<std::string> labels;
  std::vector<int> parent;
  collect_labels(root, labels, parent, -1);
  const int n = static_cast<int>(labels.size());

  // depth of each node, then join = lowest common ancestor
  std::vector<int> depth(n, 0);
  for (int i = 1; i < n; ++i) depth[i] = depth[parent[i]] + 1;
  Lattice data;
  data.elements = labels;
  data.join.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int x = a, y = b;
      while (x != y) {
        if (depth[x] >= depth[y]) x = parent[x];
        else y = parent[y];
      }
      data.join[a][b] = x;
    }
  }
  return AtomicDomain(std::move(name), std::move(data));
}

const AtomicDomain::Continuous& AtomicDomain::continuous() const {
  if (!is_continuous())
    fail(ErrorKind::DomainMismatch, "domain '" + name_ + "' is not continuous");
  return std::get<Continuous>(data_);
}

const AtomicDomain::Lattice& AtomicDomain::lattice() const {
  if (!is_lattice())
    fail(ErrorKind::DomainMismatch, "domain '" + name_ + "' is not a lattice");
  return std::get<Lattice>(data_);
}

int AtomicDomain::dimension() const {
  return is_continuous() ? static_cast<int>(continuous().bounds.size()) : 0;
}

int AtomicDomain::lattice_size() const {
  return static_cast<int>(lattice().elements.size());
}

int AtomicDomain::lattice_join(int a, int b) const {
  const auto& data = lattice();
  if (a < 0 || b < 0 || a >= static_cast<int>(data.elements.size()) ||
      b >= static_cast<int>(data.elements.size()))
    fail(ErrorKind::DomainMismatch, "lattice element index out of range in '" + name_ + "'");
  return data.join[a][b];
}

int AtomicDomain::lattice_index(const std::string& element) const {
  const auto& elems = lattice().elements;
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == element) return static_cast<int>(i);
  return -1;
}

const std::string& AtomicDomain::lattice_element(int index) const {
  const auto& elems = lattice().elements;
  if (index < 0 || index >= static_cast<int>(elems.size()))
    fail(ErrorKind::DomainMismatch, "lattice element index out of range in '" + name_ + "'");
  return elems[index];
}

bool AtomicDomain::operator==(const AtomicDomain& other) const {
  if (name_ != other.name_) return false;
  if (is_continuous() != other.is_continuous()) return false;
  if (is_continuous())
    return continuous().bounds == other.continuous().bounds;
  return lattice().elements == other.lattice().elements &&
         lattice().join == other.lattice().join;
}

bool domain_contains(const AtomicDomain& domain, const Point& point) {
  if (domain.is_continuous()) {
    const auto* coords = std::get_if<ContinuousPoint>(&point);
    if (!coords || coords->size() != domain.continuous().bounds.size()) return false;
    for (size_t k = 0; k < coords->size(); ++k)
      if (!domain.continuous().bounds[k].contains((*coords)[k])) return false;
    return true;
  }
  const auto* index = std::get_if<int>(&point);
  return index && *index >= 0 && *index < domain.lattice_size();
}

std::string point_to_string(const AtomicDomain& domain, const Point& point) {
  if (domain.is_continuous()) {
    const auto& coords = std::get<ContinuousPoint>(point);
    std::string out = "(";
    for (size_t k = 0; k < coords.size(); ++k) {
      if (k) out += ",";
      out += scalar_human(coords[k]);
    }
    return out + ")";
  }
  return domain.lattice_element(std::get<int>(point));
}

} // namespace convexsem
