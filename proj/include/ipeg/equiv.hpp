#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipeg/ast.hpp"
#include "ipeg/interp.hpp"

namespace ipeg {

struct EquivOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t max_len = 8;
  Col max_col = 8;
  DiffRel mode = DiffRel::eq();
  std::uint64_t fuel = kDefaultFuel;
};

struct Disagreement {
  std::vector<Token> input;
  DiffRel mode;
  Outcome outcome_a;
  Outcome outcome_b;
};

/// Bounded empirical equivalence check: both grammars are parsed from
/// their start expressions on the same random token streams with the
/// initial state (tokens, every column, flag down).  Deterministic
/// given the seed.  About 30% of streams come from random walks over
/// grammar A so runs are not dominated by immediate failures.
struct EquivReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<Disagreement> disagreements;
  bool agreed() const { return disagreements.empty(); }
};

/// Throws Error when both grammars have terminals but no terminal in
/// common (token streams could then exercise neither grammar).
EquivReport run_equiv(const Grammar& a, const Grammar& b,
                      const EquivOptions& opt);

}  // namespace ipeg
