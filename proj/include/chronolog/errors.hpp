#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chronolog {

struct SourcePosition {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourcePosition pos, const std::string &message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                           message),
        pos_(pos), message_(message) {}

  SourcePosition position() const { return pos_; }
  const std::string &message() const { return message_; }

private:
  SourcePosition pos_;
  std::string message_;
};

/// Raised when the program has a dependency cycle; cycle is [P, Q, ..., P].
class RecursionError : public std::runtime_error {
public:
  explicit RecursionError(std::vector<std::string> cycle);
  const std::vector<std::string> &cycle() const { return cycle_; }

private:
  std::vector<std::string> cycle_;
};

/// Static errors found before evaluation (unsafe rules, arity clashes, ...).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace chronolog
