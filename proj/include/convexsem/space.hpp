// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "convexsem/domain.hpp"

namespace convexsem {

/// An ordered tensor product of atomic domains. The empty product is the
/// unit space I. Factor order is significant; equality is factor-list
/// equality.
class Space {
public:
  Space() = default;
  explicit Space(std::vector<DomainPtr> factors);
  static Space unit() { return Space(); }

  const std::vector<DomainPtr>& factors() const { return factors_; }
  int size() const { return static_cast<int>(factors_.size()); }
  bool is_unit() const { return factors_.empty(); }
  /// True when every factor is a finite lattice (so the space's points
  /// can be enumerated exhaustively).
  bool all_lattice() const;

  Space tensor(const Space& other) const;

  bool operator==(const Space& other) const;
  bool operator!=(const Space& other) const { return !(*this == other); }

  std::string to_string() const; // "colour*taste*texture", unit prints "I"

private:
  std::vector<DomainPtr> factors_;
};

} // namespace convexsem
