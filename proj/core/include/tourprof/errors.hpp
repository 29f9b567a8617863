#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tourprof {

// Bad argument or parameter outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input data. `line` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An identity that must hold by construction failed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tourprof
