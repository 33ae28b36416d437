#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ipeg/ast.hpp"

namespace ipeg {

/// Subset of {-1, 0, 1}: the ways parsing an expression may end.
/// -1 may fail, 0 may succeed consuming nothing, 1 may succeed
/// consuming input.
struct ApproxSet {
  std::uint8_t bits = 0;

  static constexpr std::uint8_t kFail = 1;     // -1
  static constexpr std::uint8_t kEmpty = 2;    // 0
  static constexpr std::uint8_t kConsume = 4;  // 1

  bool may_fail() const { return bits & kFail; }
  bool may_empty() const { return bits & kEmpty; }
  bool may_consume() const { return bits & kConsume; }
  bool empty() const { return bits == 0; }

  void add(int n) { bits |= flag_of(n); }
  bool contains(int n) const { return bits & flag_of(n); }

  ApproxSet operator|(ApproxSet o) const {
    return ApproxSet{static_cast<std::uint8_t>(bits | o.bits)};
  }
  bool operator==(const ApproxSet& o) const = default;

  std::vector<int> to_list() const;  // sorted subset of {-1, 0, 1}
  std::string to_string() const;

 private:
  static std::uint8_t flag_of(int n) {
    return n < 0 ? kFail : (n == 0 ? kEmpty : kConsume);
  }
};

/// `clause0` adds: an expression that may succeed is also recorded as
/// possibly failing.  This coarser variant makes disjoint-choice
/// rewriting preserve well-formedness.
enum class ApproxVariant { baseline, clause0 };

/// Least-fixpoint approximation table.  Nonterminal entries are fixed
/// at construction; entries for arbitrary expressions (also those not
/// occurring in the grammar) are derived structurally on demand.
class ApproxTable {
 public:
  ApproxTable(const Grammar& g, ApproxVariant variant);

  ApproxSet of(const Expr& e) const;
  ApproxSet of_rule(const std::string& name) const;
  ApproxVariant variant() const { return variant_; }

 private:
  ApproxSet eval(const Expr& e) const;

  ApproxVariant variant_;
  std::map<std::string, ApproxSet> nts_;
  // Holds every node of the grammar after construction; expressions
  // outside the grammar are evaluated structurally without caching, so
  // a built table is immutable and safe to share.
  mutable std::unordered_map<const Expr*, ApproxSet> cache_;
  bool frozen_ = false;
};

inline ApproxTable approximate(const Grammar& g,
                               ApproxVariant v = ApproxVariant::baseline) {
  return ApproxTable(g, v);
}

/// Least-fixpoint well-formedness verdicts.  A grammar is well-formed
/// iff every node of every rule body and of the start expression holds.
class WfTable {
 public:
  WfTable(const Grammar& g, const ApproxTable& approx);

  bool of(const Expr& e) const;
  bool rule_ok(const std::string& name) const;
  bool grammar_ok() const { return grammar_ok_; }

  /// Human-readable reason a node is not well-formed (the failing
  /// clause premise, or the recursion cycle it participates in).
  std::string witness(const Expr& e) const;
  /// Witness for the first failing rule (or start), empty if none.
  std::string first_failure() const;

 private:
  bool eval(const Expr& e) const;

  const ApproxTable* approx_;
  std::map<std::string, bool> nts_;
  std::map<std::string, ExprPtr> bodies_;
  mutable std::unordered_map<const Expr*, bool> cache_;
  bool frozen_ = false;
  bool grammar_ok_ = false;
  std::string first_failure_;
};

inline WfTable well_formed(const Grammar& g, const ApproxTable& approx) {
  return WfTable(g, approx);
}

enum class Consumption { Never, Always, Mixed };

/// Conservative classification used by alignment elimination: Never if
/// the expression cannot succeed consuming input, Always if it cannot
/// succeed consuming nothing, Mixed otherwise.
Consumption consumption_class(const Expr& e, const ApproxTable& approx);

const char* consumption_name(Consumption c);

}  // namespace ipeg
