#pragma once

// Shared test fixtures: independent oracles the expected values are
// frozen from, plus small builders.  Everything here is deliberately
// written along different routes than the library (enumeration and
// depth-stratified derivation instead of interval arithmetic and
// fixpoints) so the two sides can check each other.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ipeg/analysis.hpp"
#include "ipeg/ast.hpp"
#include "ipeg/dsl.hpp"
#include "ipeg/interp.hpp"

namespace ipeg::testing {

inline Grammar G(const std::string& text) { return parse_grammar_text(text); }

inline std::vector<Token> toks(
    std::initializer_list<std::pair<const char*, Col>> items) {
  std::vector<Token> out;
  for (const auto& [name, col] : items) out.push_back(Token{name, col});
  return out;
}

inline ParseState st(std::vector<Token> tokens, IndentSet indents,
                     bool align) {
  ParseState s = initial_state(std::move(tokens));
  s.indents = std::move(indents);
  s.align = align;
  return s;
}

// ---------------------------------------------------------------------
// Brute-force relation oracle: finite enumeration over [0, B].

inline std::set<int> brute_image(const DiffRel& r, const std::set<int>& ys,
                                 int bound) {
  std::set<int> out;
  for (int y : ys)
    for (int x = 0; x <= bound; ++x)
      if (r.member(static_cast<Col>(y), static_cast<Col>(x))) out.insert(x);
  return out;
}

inline std::set<int> brute_preimage(const DiffRel& r, const std::set<int>& ys,
                                    int bound) {
  std::set<int> out;
  for (int y : ys)
    for (int x = 0; x <= bound; ++x)
      if (r.member(static_cast<Col>(x), static_cast<Col>(y))) out.insert(x);
  return out;
}

inline std::set<int> iset_to_set(const IndentSet& s, int bound) {
  std::set<int> out;
  for (int c = 0; c <= bound; ++c)
    if (s.contains(static_cast<Col>(c))) out.insert(c);
  return out;
}

// ---------------------------------------------------------------------
// Depth-stratified derivation enumerator for the approximation
// semantics.  An assertion holds iff it has a finite derivation; the
// limit over increasing depth is therefore exactly the least fixpoint.

class ApproxOracle {
 public:
  ApproxOracle(const Grammar& g, ApproxVariant v) : g_(&g), variant_(v) {}

  bool derivable(const Expr& e, int n, int depth) {
    if (depth <= 0) return false;
    const auto key = std::make_tuple(&e, n, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_.emplace(key, false);  // cut off self-support within a depth
    const bool result = step(e, n, depth - 1);
    memo_[key] = result;
    return result;
  }

  ApproxSet limit(const Expr& e) {
    // Facts only grow with depth and are bounded by 3 per node, so a
    // budget of 3 * (grammar size) + expression size is enough.
    const int depth =
        static_cast<int>(3 * (g_->total_nodes() + node_count(e)) + 8);
    ApproxSet s;
    for (int n : {-1, 0, 1})
      if (derivable(e, n, depth)) s.add(n);
    return s;
  }

 private:
  bool step(const Expr& e, int n, int d) {
    if (variant_ == ApproxVariant::clause0 && n == -1)
      if (derivable(e, 0, d) || derivable(e, 1, d)) return true;
    switch (e.kind) {
      case ExprKind::Empty:
        return n == 0;
      case ExprKind::Terminal:
        return n == 1 || n == -1;
      case ExprKind::NonTerminal: {
        const ExprPtr* body = g_->find_rule(e.name);
        return body && derivable(**body, n, d);
      }
      case ExprKind::Seq: {
        const Expr& p = *e.left;
        const Expr& q = *e.right;
        if (n == 0) return derivable(p, 0, d) && derivable(q, 0, d);
        if (n == 1) {
          for (int a : {0, 1})
            for (int b : {0, 1})
              if ((a == 1 || b == 1) && derivable(p, a, d) &&
                  derivable(q, b, d))
                return true;
          return false;
        }
        if (derivable(p, -1, d)) return true;
        return (derivable(p, 0, d) || derivable(p, 1, d)) &&
               derivable(q, -1, d);
      }
      case ExprKind::Choice: {
        if ((n == 0 || n == 1) && derivable(*e.left, n, d)) return true;
        return derivable(*e.left, -1, d) && derivable(*e.right, n, d);
      }
      case ExprKind::Not: {
        if (n == 0) return derivable(*e.left, -1, d);
        if (n == -1)
          return derivable(*e.left, 0, d) || derivable(*e.left, 1, d);
        return false;
      }
      case ExprKind::Star: {
        if (n == 0) return derivable(*e.left, -1, d);
        if (n == 1)
          return derivable(*e.left, -1, d) && derivable(*e.left, 1, d);
        return false;
      }
      case ExprKind::Plus: {
        // Derive through the desugared form p p*.
        const ExprPtr expanded = mk_seq(e.left, mk_star(e.left));
        sugar_keepalive_.push_back(expanded);
        return derivable(*expanded, n, d);
      }
      case ExprKind::Opt: {
        const ExprPtr expanded = mk_choice(e.left, mk_empty());
        sugar_keepalive_.push_back(expanded);
        return derivable(*expanded, n, d);
      }
      case ExprKind::Indent:
      case ExprKind::Loc:
      case ExprKind::Align:
        return derivable(*e.left, n, d);
    }
    return false;
  }

  const Grammar* g_;
  ApproxVariant variant_;
  std::map<std::tuple<const Expr*, int, int>, bool> memo_;
  std::vector<ExprPtr> sugar_keepalive_;
};

// ---------------------------------------------------------------------
// Depth-stratified enumerator for the well-formedness predicate.

class WfOracle {
 public:
  WfOracle(const Grammar& g, const ApproxTable& approx)
      : g_(&g), approx_(&approx) {}

  bool derivable(const Expr& e, int depth) {
    if (depth <= 0) return false;
    const auto key = std::make_pair(&e, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    memo_.emplace(key, false);
    const bool result = step(e, depth - 1);
    memo_[key] = result;
    return result;
  }

  bool limit(const Expr& e) {
    const int depth =
        static_cast<int>(g_->total_nodes() + node_count(e) + 8);
    return derivable(e, depth);
  }

 private:
  bool step(const Expr& e, int d) {
    switch (e.kind) {
      case ExprKind::Empty:
      case ExprKind::Terminal:
        return true;
      case ExprKind::NonTerminal: {
        const ExprPtr* body = g_->find_rule(e.name);
        return body && derivable(**body, d);
      }
      case ExprKind::Seq:
        return derivable(*e.left, d) &&
               (!approx_->of(*e.left).may_empty() || derivable(*e.right, d));
      case ExprKind::Choice:
        return derivable(*e.left, d) &&
               (!approx_->of(*e.left).may_fail() || derivable(*e.right, d));
      case ExprKind::Not:
      case ExprKind::Opt:
      case ExprKind::Align:
        return derivable(*e.left, d);
      case ExprKind::Star:
      case ExprKind::Plus:
        return !approx_->of(*e.left).may_empty() && derivable(*e.left, d);
      case ExprKind::Indent:
      case ExprKind::Loc:
        return e.rel.is_total() && derivable(*e.left, d);
    }
    return false;
  }

  const Grammar* g_;
  const ApproxTable* approx_;
  std::map<std::pair<const Expr*, int>, bool> memo_;
};

// ---------------------------------------------------------------------
// Law-trial comparison.  Fuel-exhaustion on both sides counts as
// agreement (both diverge); one-sided exhaustion is retried with a
// larger budget because the two sides of a law take slightly different
// numbers of derivation steps.

inline std::optional<std::string> law_disagreement(
    const Grammar& g, const ExprPtr& lhs, const ExprPtr& rhs,
    const DiffRel& mode, const ParseState& s, std::uint64_t fuel = 200000) {
  Outcome a = parse_std(g, lhs, mode, s, fuel);
  Outcome b = parse_std(g, rhs, mode, s, fuel);
  if (a.is_fuel_exhausted() != b.is_fuel_exhausted()) {
    a = parse_std(g, lhs, mode, s, fuel * 20);
    b = parse_std(g, rhs, mode, s, fuel * 20);
  }
  if (a == b) return std::nullopt;
  return "lhs " + print_expr(*lhs) + " -> " + a.to_string() + "  vs  rhs " +
         print_expr(*rhs) + " -> " + b.to_string() + "  at " + s.to_string() +
         " mode " + format_rel(mode);
}

}  // namespace ipeg::testing
