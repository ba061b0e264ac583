// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "convexsem/scalar.hpp"

namespace convexsem {

/// Closed rational interval [lo, hi]; lo <= hi always.
class Interval {
public:
  Interval(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_)
      fail(ErrorKind::MalformedInput,
           "interval [" + scalar_machine(lo_) + "," + scalar_machine(hi_) + "] has lo > hi");
  }

  const Scalar& lo() const { return lo_; }
  const Scalar& hi() const { return hi_; }
  Scalar width() const { return hi_ - lo_; }
  bool degenerate() const { return lo_ == hi_; }
  bool contains(const Scalar& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  bool operator==(const Interval& other) const {
    return lo_ == other.lo_ && hi_ == other.hi_;
  }

private:
  Scalar lo_;
  Scalar hi_;
};

} // namespace convexsem
