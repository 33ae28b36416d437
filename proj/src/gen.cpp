#include "ipeg/gen.hpp"

#include <functional>

namespace ipeg::gen {

DiffRel random_total_rel(Rng& rng) {
  switch (rng.below(6)) {
    case 0: return DiffRel::eq();
    case 1: return DiffRel::gt();
    case 2: return DiffRel::ge();
    case 3: return DiffRel::any();
    case 4: {
      // Finite nonnegative-reach interval, hi >= 0.
      const std::int64_t lo = static_cast<std::int64_t>(rng.below(5)) - 2;
      const std::int64_t hi =
          std::max<std::int64_t>(lo, 0) + static_cast<std::int64_t>(rng.below(3));
      return DiffRel(lo, hi);
    }
    default: {
      const std::int64_t lo = static_cast<std::int64_t>(rng.below(4)) - 1;
      return DiffRel(lo, std::nullopt);
    }
  }
}

DiffRel random_rel(Rng& rng) {
  if (rng.chance(3, 4)) return random_total_rel(rng);
  // Non-total: hi < 0.
  const std::int64_t hi = -1 - static_cast<std::int64_t>(rng.below(2));
  if (rng.chance(1, 2)) return DiffRel(std::nullopt, hi);
  return DiffRel(hi - static_cast<std::int64_t>(rng.below(3)), hi);
}

DiffRel random_nonneg_rel(Rng& rng) {
  const std::int64_t lo = static_cast<std::int64_t>(rng.below(3));
  if (rng.chance(1, 3)) return DiffRel(lo, std::nullopt);
  return DiffRel(lo, lo + static_cast<std::int64_t>(rng.below(4)));
}

namespace {

ExprPtr gen_expr(Rng& rng, const ExprCfg& cfg, int depth) {
  const auto rel = [&]() {
    return cfg.total_rels_only ? random_total_rel(rng) : random_rel(rng);
  };
  if (depth <= 0) {
    switch (rng.below(8)) {
      case 0:
        return mk_empty();
      case 1:
        if (!cfg.nonterminals.empty() && rng.chance(1, 2))
          return mk_nonterminal(
              cfg.nonterminals[rng.below(cfg.nonterminals.size())]);
        [[fallthrough]];
      default:
        return mk_terminal(cfg.terminals[rng.below(cfg.terminals.size())]);
    }
  }
  switch (rng.below(12)) {
    case 0:
    case 1:
    case 2:
      return mk_seq(gen_expr(rng, cfg, depth - 1),
                    gen_expr(rng, cfg, depth - 1));
    case 3:
    case 4:
    case 5:
      return mk_choice(gen_expr(rng, cfg, depth - 1),
                       gen_expr(rng, cfg, depth - 1));
    case 6:
      return mk_not(gen_expr(rng, cfg, depth - 1));
    case 7:
      if (cfg.with_indent)
        return mk_indent(rel(), gen_expr(rng, cfg, depth - 1));
      return gen_expr(rng, cfg, depth - 1);
    case 8:
      if (cfg.with_loc) return mk_loc(rel(), gen_expr(rng, cfg, depth - 1));
      return gen_expr(rng, cfg, depth - 1);
    case 9:
      if (cfg.with_align) return mk_align(gen_expr(rng, cfg, depth - 1));
      return gen_expr(rng, cfg, depth - 1);
    case 10:
      if (cfg.with_star) return mk_star(gen_expr(rng, cfg, depth - 1));
      if (cfg.with_plus_opt && rng.chance(1, 2))
        return mk_opt(gen_expr(rng, cfg, depth - 1));
      return gen_expr(rng, cfg, depth - 1);
    default:
      if (cfg.with_plus_opt)
        return rng.chance(1, 2) ? mk_plus(gen_expr(rng, cfg, depth - 1))
                                : mk_opt(gen_expr(rng, cfg, depth - 1));
      return gen_expr(rng, cfg, depth - 1);
  }
}

}  // namespace

ExprPtr random_expr(Rng& rng, const ExprCfg& cfg) {
  return gen_expr(rng, cfg, cfg.max_depth > 0
                                ? 1 + static_cast<int>(rng.below(
                                          static_cast<std::size_t>(cfg.max_depth)))
                                : 0);
}

Grammar random_grammar(Rng& rng, const GrammarCfg& cfg) {
  ExprCfg ecfg = cfg.expr;
  ecfg.nonterminals.clear();
  for (int i = 0; i < cfg.rule_count; ++i)
    ecfg.nonterminals.push_back("X" + std::to_string(i));
  Grammar g;
  for (const std::string& name : ecfg.nonterminals)
    g.set_rule(name, random_expr(rng, ecfg));
  g.start = random_expr(rng, ecfg);
  return g;
}

IndentSet random_iset(Rng& rng, Col max_col) {
  switch (rng.below(6)) {
    case 0:
      return IndentSet::all();
    case 1:
      return IndentSet::none();
    case 2:
      return IndentSet::single(static_cast<Col>(rng.below(max_col + 1)));
    case 3: {
      // Half-infinite tail.
      return IndentSet::range(static_cast<Col>(rng.below(max_col + 1)),
                              std::nullopt);
    }
    default: {
      std::vector<IndentSet::Interval> ivs;
      const std::size_t n = 1 + rng.below(2);
      for (std::size_t i = 0; i < n; ++i) {
        const Col lo = static_cast<Col>(rng.below(max_col + 1));
        const Col hi = lo + static_cast<Col>(rng.below(3));
        ivs.push_back({lo, hi});
      }
      return IndentSet::of(std::move(ivs));
    }
  }
}

std::vector<Token> random_tokens(Rng& rng,
                                 const std::vector<std::string>& alphabet,
                                 std::size_t max_len, Col max_col) {
  std::vector<Token> out;
  if (alphabet.empty()) return out;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(Token{alphabet[rng.below(alphabet.size())],
                        static_cast<Col>(rng.below(max_col + 1))});
  return out;
}

std::vector<Token> grammar_walk_tokens(Rng& rng, const Grammar& g,
                                       std::size_t max_len, Col max_col) {
  std::vector<std::string> names;
  std::function<void(const Expr&, int)> walk = [&](const Expr& e, int depth) {
    if (names.size() >= max_len || depth > 24) return;
    switch (e.kind) {
      case ExprKind::Terminal:
        names.push_back(e.name);
        break;
      case ExprKind::NonTerminal: {
        const ExprPtr* body = g.find_rule(e.name);
        if (body) walk(**body, depth + 1);
        break;
      }
      case ExprKind::Seq:
        walk(*e.left, depth + 1);
        walk(*e.right, depth + 1);
        break;
      case ExprKind::Choice:
        walk(rng.chance(1, 2) ? *e.left : *e.right, depth + 1);
        break;
      case ExprKind::Star:
      case ExprKind::Opt: {
        const std::size_t reps =
            e.kind == ExprKind::Opt ? rng.below(2) : rng.below(3);
        for (std::size_t i = 0; i < reps; ++i) walk(*e.left, depth + 1);
        break;
      }
      case ExprKind::Plus: {
        const std::size_t reps = 1 + rng.below(2);
        for (std::size_t i = 0; i < reps; ++i) walk(*e.left, depth + 1);
        break;
      }
      case ExprKind::Not:
        break;  // lookahead consumes nothing
      case ExprKind::Indent:
      case ExprKind::Loc:
      case ExprKind::Align:
        walk(*e.left, depth + 1);
        break;
      case ExprKind::Empty:
        break;
    }
  };
  walk(*g.start, 0);
  if (names.size() > max_len) names.resize(max_len);

  std::vector<Token> out;
  for (const std::string& n : names)
    out.push_back(Token{n, static_cast<Col>(rng.below(max_col + 1))});
  return out;
}

ParseState random_state(Rng& rng, std::vector<Token> tokens, Col max_col) {
  ParseState s = initial_state(std::move(tokens));
  s.indents = random_iset(rng, max_col);
  s.align = rng.chance(1, 4);
  return s;
}

}  // namespace ipeg::gen
