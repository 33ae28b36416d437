#pragma once

#include <string>

#include "ipeg/ast.hpp"

namespace ipeg {

/// Reads a grammar from DSL text.
///
///   rule:   Name <- expr ;          start:  start <- expr ;
///   expr:   choice `/` < sequence (juxtaposition) < prefix `!`
///           < postfix `*` `+` `?` < atoms
///   atoms:  eps, "token", Name, ( e ), ind(REL, e), loc(REL, e), aln(e)
///   REL:    = | > | >= | any | diff[lo..hi]   (omit a bound for inf)
///
/// `#` starts a line comment.  A leading comment of the form
/// `# requires: token-mode = eq, initial-align = false` marks a grammar
/// produced by position elimination and sets requires_eq_mode.
///
/// Throws SyntaxError with position info; referencing an undefined
/// nonterminal or omitting the start rule is an error.
Grammar parse_grammar_text(const std::string& text);

/// Canonical DSL text; parse_grammar_text(pretty_print(g)) is
/// structurally identical to g.
std::string pretty_print(const Grammar& g);

/// One expression in DSL syntax (also the canonical structural key
/// used for companion-rule deduplication).
std::string print_expr(const Expr& e);

const char* kind_name(ExprKind k);

}  // namespace ipeg
