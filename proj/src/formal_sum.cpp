// SPDX-License-Identifier: Apache-2.0
#include "convexsem/formal_sum.hpp"

#include "convexsem/errors.hpp"

namespace convexsem {

namespace {

void validate(const DomainPtr& domain, const FormalConvexSum& sum) {
  if (sum.entries.empty()) fail(ErrorKind::MalformedSum, "empty convex sum");
  Scalar total = 0;
  for (const auto& entry : sum.entries) {
    if (entry.weight < 0) fail(ErrorKind::MalformedSum, "negative mixing weight");
    total += entry.weight;
    if (!domain_contains(*domain, entry.point)) {
      fail(ErrorKind::DomainMismatch,
           "sum point does not lie in domain '" + domain->name() + "'");
    }
  }
  if (total != 1) {
    fail(ErrorKind::MalformedSum, "mixing weights sum to " + scalar_machine(total) +
                                      ", expected 1");
  }
}

} // namespace

Point mix(const DomainPtr& domain, const FormalConvexSum& sum) {
  validate(domain, sum);
  if (domain->is_continuous()) {
    const int dim = domain->dimension();
    ContinuousPoint out(dim, Scalar(0));
    for (const auto& entry : sum.entries) {
      const auto& p = std::get<ContinuousPoint>(entry.point);
      for (int k = 0; k < dim; ++k) out[k] += entry.weight * p[k];
    }
    return out;
  }
  int join = -1;
  for (const auto& entry : sum.entries) {
    if (entry.weight == 0) continue;
    const int element = std::get<int>(entry.point);
    join = join < 0 ? element : domain->lattice_join(join, element);
  }
  return join;
}

bool flatten_check(const DomainPtr& domain, const NestedConvexSum& nested) {
  if (nested.entries.empty()) fail(ErrorKind::MalformedSum, "empty convex sum");
  FormalConvexSum outer;
  FormalConvexSum flattened;
  Scalar total = 0;
  for (const auto& entry : nested.entries) {
    if (entry.weight < 0) fail(ErrorKind::MalformedSum, "negative mixing weight");
    total += entry.weight;
    outer.entries.push_back({entry.weight, mix(domain, entry.inner)});
    for (const auto& inner : entry.inner.entries) {
      flattened.entries.push_back({entry.weight * inner.weight, inner.point});
    }
  }
  if (total != 1) {
    fail(ErrorKind::MalformedSum, "mixing weights sum to " + scalar_machine(total) +
                                      ", expected 1");
  }
  // Flattened zero-weight groups keep their points with weight zero,
  // which mix() ignores, so both sides are well-formed sums.
  return mix(domain, outer) == mix(domain, flattened);
}

} // namespace convexsem
