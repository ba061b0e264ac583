// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace convexsem {

/// Classifies every failure the engine can report. CLI exit codes and the
/// tests dispatch on the kind, not on message text.
enum class ErrorKind {
  DomainMismatch,
  MalformedSum,
  MalformedInput,
  EmptyIntersection,
  UnsupportedIntersection,
  UnsupportedComposition,
  SpaceMismatch,
  MalformedPlan,
  SyntaxError,
  ValidationError,
  UnknownWord,
  UnknownBase,
  NoReduction,
  InputTooLarge,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  Error(ErrorKind kind, const std::string& message, int line, int column)
      : std::runtime_error(std::string(error_kind_name(kind)) + " at " +
                           std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        kind_(kind), line_(line), column_(column) {}

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }     // 0 when not positional
  int column() const noexcept { return column_; } // 0 when not positional

private:
  ErrorKind kind_;
  int line_ = 0;
  int column_ = 0;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

[[noreturn]] inline void fail_at(ErrorKind kind, const std::string& message,
                                 int line, int column) {
  throw Error(kind, message, line, column);
}

} // namespace convexsem
