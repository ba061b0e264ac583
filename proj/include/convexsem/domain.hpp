// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "convexsem/interval.hpp"

namespace convexsem {

/// A node of a labelled hierarchy, used to derive join semilattices where
/// the join of two nodes is their lowest common ancestor.
struct TreeNode {
  std::string label;
  std::vector<TreeNode> children;
};

/// One atomic quality domain: either a bounded continuous block of
/// dimensions, or a finite join semilattice given by an explicit join table.
/// The join table is checked exhaustively for idempotence, commutativity and
/// associativity at construction.
class AtomicDomain {
public:
  struct Continuous {
    std::vector<Interval> bounds; // one per dimension
  };

  struct Lattice {
    std::vector<std::string> elements;  // names, unique
    std::vector<std::vector<int>> join; // join[a][b] = index of a v b
  };

  AtomicDomain(std::string name, Continuous data);
  AtomicDomain(std::string name, Lattice data);

  /// {0,1}^k under element-wise max; element names look like "(0,1)".
  static AtomicDomain tuple_max(std::string name, int k);

  /// All node labels of the tree; join = lowest common ancestor.
  static AtomicDomain from_tree(std::string name, const TreeNode& root);

  const std::string& name() const { return name_; }
  bool is_continuous() const { return std::holds_alternative<Continuous>(data_); }
  bool is_lattice() const { return std::holds_alternative<Lattice>(data_); }
  const Continuous& continuous() const;
  const Lattice& lattice() const;

  /// Number of coordinates (continuous) — lattices have none.
  int dimension() const;
  int lattice_size() const;
  int lattice_join(int a, int b) const;
  int lattice_index(const std::string& element) const; // -1 when absent
  const std::string& lattice_element(int index) const;

  bool operator==(const AtomicDomain& other) const;

private:
  std::string name_;
  std::variant<Continuous, Lattice> data_;
};

using DomainPtr = std::shared_ptr<const AtomicDomain>;

inline DomainPtr make_domain(AtomicDomain domain) {
  return std::make_shared<const AtomicDomain>(std::move(domain));
}

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A point of an atomic domain: a coordinate vector for continuous domains,
/// a lattice element index for lattice domains.
using ContinuousPoint = std::vector<Scalar>;
using Point = std::variant<ContinuousPoint, int>;

bool domain_contains(const AtomicDomain& domain, const Point& point);
std::string point_to_string(const AtomicDomain& domain, const Point& point);

} // namespace convexsem
