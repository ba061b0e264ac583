// SPDX-License-Identifier: Apache-2.0
#include "convexsem/space.hpp"

#include <utility>

#include "convexsem/errors.hpp"

namespace convexsem {

Space::Space(std::vector<DomainPtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (!f)
      fail(ErrorKind::MalformedInput, "space factor must not be null");
}

bool Space::all_lattice() const {
  for (const auto& f : factors_)
    if (!f->is_lattice())
      return false;
  return true;
}

Space Space::tensor(const Space& other) const {
  std::vector<DomainPtr> joined = factors_;
  joined.insert(joined.end(), other.factors_.begin(), other.factors_.end());
  return Space(std::move(joined));
}

bool Space::operator==(const Space& other) const {
  if (factors_.size() != other.factors_.size())
    return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!same_domain(factors_[i], other.factors_[i]))
      return false;
  return true;
}

std::string Space::to_string() const {
  if (factors_.empty())
    return "I";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0)
      out += "*";
    out += factors_[i]->name();
  }
  return out;
}

} // namespace convexsem
