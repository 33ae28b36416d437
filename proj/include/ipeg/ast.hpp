#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipeg/rel.hpp"

namespace ipeg {

enum class ExprKind {
  Empty,        // eps
  Terminal,     // "a"
  NonTerminal,  // X
  Seq,          // p q
  Choice,       // p / q
  Not,          // !p
  Star,         // p*
  Plus,         // p+   (surface sugar, removed by desugar)
  Opt,          // p?   (surface sugar, removed by desugar)
  Indent,       // ind(r, p)
  Loc,          // loc(s, p)
  Align,        // aln(p)
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node.  `left` is the only child of unary
/// constructs; Seq/Choice use `left` and `right`.
struct Expr {
  ExprKind kind;
  std::string name;  // Terminal, NonTerminal
  ExprPtr left;
  ExprPtr right;
  DiffRel rel;  // Indent, Loc
};

ExprPtr mk_empty();
ExprPtr mk_terminal(std::string name);
ExprPtr mk_nonterminal(std::string name);
ExprPtr mk_seq(ExprPtr l, ExprPtr r);
ExprPtr mk_choice(ExprPtr l, ExprPtr r);
ExprPtr mk_not(ExprPtr p);
ExprPtr mk_star(ExprPtr p);
ExprPtr mk_plus(ExprPtr p);
ExprPtr mk_opt(ExprPtr p);
ExprPtr mk_indent(DiffRel r, ExprPtr p);
ExprPtr mk_loc(DiffRel r, ExprPtr p);
ExprPtr mk_align(ExprPtr p);

/// The always-failing expression used by splitting: !eps.
ExprPtr mk_fail();

bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  return expr_equal(*a, *b);
}

std::size_t node_count(const Expr& e);
bool contains_kind(const Expr& e, ExprKind k);
void for_each_node(const Expr& e, const std::function<void(const Expr&)>& fn);

/// Grammar: an ordered rule map (the production function) plus the
/// start expression.  Rule order is preserved so printing is stable.
class Grammar {
 public:
  const std::vector<std::pair<std::string, ExprPtr>>& rules() const {
    return rules_;
  }
  bool has_rule(const std::string& name) const;
  /// Null when the rule does not exist.
  const ExprPtr* find_rule(const std::string& name) const;
  /// Adds a rule or replaces the body of an existing one.
  void set_rule(const std::string& name, ExprPtr body);

  std::set<std::string> terminals() const;
  std::size_t total_nodes() const;
  /// `base` if unused, otherwise base_2, base_3, ...
  std::string fresh_name(const std::string& base) const;

  /// Applies fn to every rule body and the start expression.
  void for_each_body(const std::function<void(const Expr&)>& fn) const;

  ExprPtr start;
  /// Set by position elimination: the grammar is only equivalent to
  /// its source under token mode `=` with the alignment flag down.
  /// Survives printing as a `# requires:` header comment.
  bool requires_eq_mode = false;

 private:
  std::vector<std::pair<std::string, ExprPtr>> rules_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Report-only sanity checks: undefined nonterminals, unreachable
/// rules, non-total relations under ind/loc, and feature flags.
struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool repetition_free = true;
  bool alignment_free = true;
  bool position_free = true;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Grammar& g);

}  // namespace ipeg
