// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "convexsem/errors.hpp"

namespace convexsem {

/// Exact rational scalar. All engine arithmetic runs on these; no value is
/// ever rounded. boost keeps the fraction in canonical reduced form with a
/// positive denominator.
using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Accepts integers ("42", "-3"), fractions ("3/4", "-7/2") and finite
/// decimals ("0.75", "-1.25"), all parsed exactly.
Scalar parse_scalar(std::string_view text);

/// Decimal rendering when the value has a finite decimal expansion of at
/// most `max_digits` places ("0.75", "60"), otherwise "num/den".
std::string scalar_human(const Scalar& value, int max_digits = 12);

/// Always "num" or "num/den"; round-trips through parse_scalar.
std::string scalar_machine(const Scalar& value);

inline Scalar scalar_of(long num, long den = 1) { return Scalar(num, den); }

} // namespace convexsem
