#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ipeg/ast.hpp"
#include "ipeg/interp.hpp"
#include "ipeg/lex.hpp"

namespace ipeg::gen {

/// Seeded generator.  All sampling goes through next()/below() on a
/// mt19937_64 so streams are bit-reproducible across platforms
/// (std::uniform_int_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::size_t below(std::size_t n) { return n ? next() % n : 0; }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

 private:
  std::mt19937_64 eng_;
};

struct ExprCfg {
  int max_depth = 4;
  std::vector<std::string> terminals{"a", "b", "c"};
  std::vector<std::string> nonterminals;  // candidates for references
  bool with_star = false;
  bool with_plus_opt = false;
  bool with_align = true;
  bool with_loc = true;
  bool with_indent = true;
  bool total_rels_only = true;
};

DiffRel random_total_rel(Rng& rng);
DiffRel random_rel(Rng& rng);          // may be non-total
DiffRel random_nonneg_rel(Rng& rng);   // lo >= 0 (exact composition)

ExprPtr random_expr(Rng& rng, const ExprCfg& cfg);

struct GrammarCfg {
  int rule_count = 2;
  ExprCfg expr;
};

/// Rules X0..Xn-1 plus a start expression, all drawn from cfg.expr.
Grammar random_grammar(Rng& rng, const GrammarCfg& cfg);

IndentSet random_iset(Rng& rng, Col max_col);

std::vector<Token> random_tokens(Rng& rng,
                                 const std::vector<std::string>& alphabet,
                                 std::size_t max_len, Col max_col);

/// Token stream biased toward sequences the grammar can at least
/// partially consume: a random walk over the grammar structure emits
/// terminal names, then columns are drawn at random.
std::vector<Token> grammar_walk_tokens(Rng& rng, const Grammar& g,
                                       std::size_t max_len, Col max_col);

/// Random operation state over the given tokens: random suffix
/// position never used, full buffer with random indentation set and
/// flag.
ParseState random_state(Rng& rng, std::vector<Token> tokens, Col max_col);

}  // namespace ipeg::gen
