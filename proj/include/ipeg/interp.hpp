#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipeg/analysis.hpp"
#include "ipeg/ast.hpp"
#include "ipeg/lex.hpp"

namespace ipeg {

/// Operation state threaded through parsing: the remaining input, the
/// set of indentation-baseline candidates, and the alignment flag.
/// The token buffer is shared; a state is a suffix view into it.
struct ParseState {
  std::shared_ptr<const std::vector<Token>> input;
  std::size_t pos = 0;
  IndentSet indents;
  bool align = false;

  std::span<const Token> remaining() const {
    static const std::vector<Token> kNone;
    const auto& buf = input ? *input : kNone;
    return std::span<const Token>(buf).subspan(pos);
  }

  /// Equality of the observable state: remaining tokens (by value),
  /// indentation set, and flag.  Buffers need not be shared.
  bool operator==(const ParseState& o) const;
  std::string to_string() const;
};

/// Initial state for a top-level parse: all tokens, every column a
/// baseline candidate, alignment flag down.
ParseState initial_state(std::vector<Token> tokens);

struct Outcome {
  enum class Kind { Success, Failure, FuelExhausted };
  Kind kind = Kind::Failure;
  std::optional<ParseState> state;  // set iff Success
  std::uint64_t fuel_spent = 0;     // set iff FuelExhausted

  static Outcome success(ParseState s);
  static Outcome failure();
  static Outcome fuel_exhausted(std::uint64_t spent);

  bool is_success() const { return kind == Kind::Success; }
  bool is_failure() const { return kind == Kind::Failure; }
  bool is_fuel_exhausted() const { return kind == Kind::FuelExhausted; }

  /// Success outcomes compare by state; fuel exhaustion never equals a
  /// definite outcome (spent counts are not compared).
  bool operator==(const Outcome& o) const;
  std::string to_string() const;
};

inline constexpr std::uint64_t kDefaultFuel = 1000000;

/// Reference interpreter for the ten-clause semantics.  Every
/// semantic-rule application costs one unit of fuel; when fuel runs
/// out the outcome is FuelExhausted, the runtime witness of possible
/// divergence.  Implemented with an explicit frame stack, so deep or
/// divergent recursion consumes fuel rather than machine stack.
Outcome parse_std(const Grammar& g, const ExprPtr& e, const DiffRel& mode,
                  const ParseState& s, std::uint64_t fuel = kDefaultFuel);

/// Strict-choice variant: when the first branch of a choice succeeds
/// and the approximation says it may fail, the second branch is also
/// parsed and its result discarded (fuel exhaustion there still
/// propagates).  `approx` must be the baseline table of `g`.
Outcome parse_strict(const Grammar& g, const ExprPtr& e, const DiffRel& mode,
                     const ParseState& s, const ApproxTable& approx,
                     std::uint64_t fuel = kDefaultFuel);

}  // namespace ipeg
