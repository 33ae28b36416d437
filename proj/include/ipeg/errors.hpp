#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ipeg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grammar-text or token-text error with a 1-based source position.
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

/// Raised by pipeline stages whose preconditions demand a well-formed
/// grammar.  Carries the analysis witness for the offending rule.
struct NotWellFormed : Error {
  NotWellFormed(const std::string& msg, std::string witness)
      : Error(msg + ": " + witness), witness(std::move(witness)) {}
  std::string witness;
};

/// Raised by alignment elimination when a concatenation's left factor
/// may both consume and not consume input, which cannot happen on a
/// properly split grammar.
struct AmbiguousConsumption : Error {
  using Error::Error;
};

}  // namespace ipeg
