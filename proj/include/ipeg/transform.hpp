#pragma once

#include <map>
#include <string>
#include <vector>

#include "ipeg/analysis.hpp"
#include "ipeg/ast.hpp"

namespace ipeg {

/// Rewrites every repetition to a fresh companion nonterminal
/// (A <- body A / eps), after first lowering p+ to p p* and p? to
/// p / eps.  One companion per distinct starred subexpression; the
/// output contains no Star/Plus/Opt nodes.
Grammar desugar(const Grammar& g);

/// Rewrites every choice p / q to the disjoint form p / !p q
/// (bottom-up, so nested choices are rewritten inside the negated
/// copy as well).  Equivalent in the standard semantics.
Grammar make_disjoint(const Grammar& g);

/// Introduces a fresh rule for every negated non-atomic expression so
/// that all negations apply to terminals, nonterminals or eps.
/// Companions are named <rule>__neg<k>.
Grammar normalize_negations(const Grammar& g);

/// The g0/g1 splitting of a prepared grammar: g0(e) succeeds exactly
/// when e succeeds consuming nothing, g1(e) exactly when e succeeds
/// consuming input.  Exposed as a class so the splitting invariant can
/// be checked on arbitrary expressions; call finish() after the last
/// g0/g1 query.
class Splitter {
 public:
  Splitter(const Grammar& g, const ApproxTable& approx);

  ExprPtr g0(const ExprPtr& e);
  ExprPtr g1(const ExprPtr& e);

  /// d'(X) = g1(d(X)) for every original rule, s' = g1(s) / g0(s),
  /// plus every g0 companion (X__g0 <- g0(d(X))) created so far.
  Grammar finish();

 private:
  ExprPtr g0_of_rule(const std::string& name);

  const Grammar* in_;
  const ApproxTable* approx_;
  std::map<std::string, ExprPtr> companions_;  // X__g0 bodies
  std::vector<std::string> companion_order_;
};

/// Checks the split preconditions (repetition-free, well-formed,
/// negations atomic) and returns the split grammar.  Throws
/// NotWellFormed / Error when a precondition fails.
Grammar split(const Grammar& g, const ApproxTable& approx);

/// Removes every alignment operator.  `approx` must be the table of
/// `g` itself, and `g` must come out of split so that every
/// concatenation's left factor classifies as Never or Always; a Mixed
/// left factor raises AmbiguousConsumption.  Aligned nonterminals get
/// lazy companions X__aln <- push(aln(d(X))).
Grammar eliminate_alignment(const Grammar& g, const ApproxTable& approx);

/// Removes every position operator from an alignment-free grammar.
/// loc(s, a) becomes ind(s, a); loc(s, X) becomes the lazy companion
/// X__loc_<rel>.  The result parses equivalently only under token
/// mode `=` with the alignment flag down, recorded in
/// requires_eq_mode.
Grammar eliminate_position(const Grammar& g);

/// Optional cleanup using failure-unit laws validated by the law
/// suite: !eps / p -> p, p / !eps -> p, !eps q -> !eps.
Grammar simplify_fail_units(const Grammar& g);

enum class Stage { Desugar, Disjoint, Negnorm, Split, Dealign, Deloc };

const char* stage_name(Stage s);
Stage parse_stage(const std::string& name);

struct StageMetrics {
  Stage stage;
  std::size_t rule_count;
  std::size_t node_count;
};

struct PipelineResult {
  Grammar grammar;
  std::vector<StageMetrics> stages;
  ApproxVariant variant;
};

/// Runs stages in order through `upto`:
/// desugar -> disjoint -> negnorm -> (well-formedness gate) -> split
/// -> dealign -> deloc.  The gate throws NotWellFormed with a witness;
/// AmbiguousConsumption propagates from dealign.  The chosen
/// approximation variant drives both the gate and the split rows.
PipelineResult run_pipeline(const Grammar& g, Stage upto,
                            ApproxVariant variant = ApproxVariant::baseline,
                            bool simplify = false);

}  // namespace ipeg
