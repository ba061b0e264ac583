// SPDX-License-Identifier: Apache-2.0
#include "convexsem/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace convexsem {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::MalformedSum: return "MalformedSum";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::UnsupportedIntersection: return "UnsupportedIntersection";
    case ErrorKind::UnsupportedComposition: return "UnsupportedComposition";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::MalformedPlan: return "MalformedPlan";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownWord: return "UnknownWord";
    case ErrorKind::UnknownBase: return "UnknownBase";
    case ErrorKind::NoReduction: return "NoReduction";
    case ErrorKind::InputTooLarge: return "InputTooLarge";
  }
  return "Error";
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    fail(ErrorKind::MalformedInput, "expected digits in number '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(ErrorKind::MalformedInput, "bad digit in number '" + std::string(whole) + "'");
  return BigInt(std::string(digits));
}

} // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  if (rest.empty())
    fail(ErrorKind::MalformedInput, "empty number '" + std::string(text) + "'");

  Scalar value;
  auto slash = rest.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_integer(rest.substr(0, slash), text);
    BigInt den = parse_integer(rest.substr(slash + 1), text);
    if (den == 0)
      fail(ErrorKind::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    value = Scalar(num, den);
  } else {
    auto dot = rest.find('.');
    if (dot == std::string_view::npos) {
      value = Scalar(parse_integer(rest, text));
    } else {
      std::string_view whole = rest.substr(0, dot);
      std::string_view frac = rest.substr(dot + 1);
      if (whole.empty() || frac.empty())
        fail(ErrorKind::MalformedInput, "bad number '" + std::string(text) + "'");
      BigInt num = parse_integer(whole, text);
      BigInt den = 1;
      BigInt frac_num = parse_integer(frac, text);
      for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      num = num * den + frac_num;
      value = Scalar(num, den);
    }
  }
  return negative ? Scalar(-value) : value;
}

std::string scalar_human(const Scalar& value, int max_digits) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;

  BigInt den = denominator(value);
  int twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  int places = std::max(twos, fives);
  if (d != 1 || places > max_digits)
    return scalar_machine(value);
  if (places == 0)
    return numerator(value).str();

  // Scale to an integer over 10^places and insert the decimal point.
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  BigInt scaled = numerator(value) * (scale / den);
  bool negative = scaled < 0;
  std::string digits = (negative ? BigInt(-scaled) : scaled).str();
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (negative ? "-" : "") + digits;
}

std::string scalar_machine(const Scalar& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1)
    return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

} // namespace convexsem
