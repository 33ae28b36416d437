#include "ipeg/transform.hpp"

#include <functional>
#include <set>
#include <tuple>

#include "ipeg/dsl.hpp"
#include "ipeg/errors.hpp"

namespace ipeg {

namespace {

/// Printable encoding of a relation for companion-rule names.
std::string rel_slug(const DiffRel& r) {
  if (r == DiffRel::eq()) return "eq";
  if (r == DiffRel::gt()) return "gt";
  if (r == DiffRel::ge()) return "ge";
  if (r == DiffRel::any()) return "any";
  auto bound = [](const std::optional<std::int64_t>& b, const char* inf) {
    if (!b) return std::string(inf);
    if (*b < 0) return "m" + std::to_string(-*b);
    return std::to_string(*b);
  };
  return "d" + bound(r.lo, "ninf") + "_" + bound(r.hi, "inf");
}

using Rewrite = std::function<ExprPtr(const ExprPtr&)>;

/// Rebuilds a node with rewritten children (identity on atoms).
ExprPtr map_children(const ExprPtr& e, const Rewrite& f) {
  switch (e->kind) {
    case ExprKind::Empty:
    case ExprKind::Terminal:
    case ExprKind::NonTerminal:
      return e;
    case ExprKind::Seq:
      return mk_seq(f(e->left), f(e->right));
    case ExprKind::Choice:
      return mk_choice(f(e->left), f(e->right));
    case ExprKind::Not:
      return mk_not(f(e->left));
    case ExprKind::Star:
      return mk_star(f(e->left));
    case ExprKind::Plus:
      return mk_plus(f(e->left));
    case ExprKind::Opt:
      return mk_opt(f(e->left));
    case ExprKind::Indent:
      return mk_indent(e->rel, f(e->left));
    case ExprKind::Loc:
      return mk_loc(e->rel, f(e->left));
    case ExprKind::Align:
      return mk_align(f(e->left));
  }
  return e;
}

bool is_atom(const Expr& e) {
  return e.kind == ExprKind::Empty || e.kind == ExprKind::Terminal ||
         e.kind == ExprKind::NonTerminal;
}

bool is_fail(const Expr& e) {
  return e.kind == ExprKind::Not && e.left->kind == ExprKind::Empty;
}

}  // namespace

Grammar desugar(const Grammar& g) {
  Grammar out;
  // Companion per distinct (already-desugared) starred body, keyed by
  // canonical printed form.
  std::map<std::string, std::string> star_names;
  std::set<std::string> used_names;
  std::vector<std::pair<std::string, ExprPtr>> pending;
  int counter = 0;
  std::string current_rule;

  std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& e)
      -> ExprPtr {
    switch (e->kind) {
      case ExprKind::Plus: {
        const ExprPtr inner = walk(e->left);
        return mk_seq(inner, walk(mk_star(e->left)));
      }
      case ExprKind::Opt:
        return mk_choice(walk(e->left), mk_empty());
      case ExprKind::Star: {
        const ExprPtr body = walk(e->left);
        const std::string key = print_expr(*body);
        auto it = star_names.find(key);
        if (it == star_names.end()) {
          std::string name =
              current_rule + "__star" + std::to_string(++counter);
          while (g.has_rule(name) || !used_names.insert(name).second)
            name += "_x";
          it = star_names.emplace(key, name).first;
          const ExprPtr nt = mk_nonterminal(name);
          pending.emplace_back(name,
                               mk_choice(mk_seq(body, nt), mk_empty()));
        }
        return mk_nonterminal(it->second);
      }
      default:
        return map_children(e, walk);
    }
  };

  for (const auto& [name, body] : g.rules()) {
    current_rule = name;
    out.set_rule(name, walk(body));
  }
  current_rule = "start";
  out.start = walk(g.start);
  out.requires_eq_mode = g.requires_eq_mode;
  for (auto& [name, body] : pending) out.set_rule(name, body);
  return out;
}

Grammar make_disjoint(const Grammar& g) {
  std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& e)
      -> ExprPtr {
    const ExprPtr rebuilt = map_children(e, walk);
    if (rebuilt->kind == ExprKind::Choice)
      return mk_choice(rebuilt->left,
                       mk_seq(mk_not(rebuilt->left), rebuilt->right));
    return rebuilt;
  };
  Grammar out;
  for (const auto& [name, body] : g.rules()) out.set_rule(name, walk(body));
  out.start = walk(g.start);
  out.requires_eq_mode = g.requires_eq_mode;
  return out;
}

Grammar normalize_negations(const Grammar& g) {
  Grammar out;
  std::map<std::string, std::string> neg_names;
  std::set<std::string> used_names;
  std::vector<std::pair<std::string, ExprPtr>> pending;
  int counter = 0;
  std::string current_rule;

  std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& e)
      -> ExprPtr {
    const ExprPtr rebuilt = map_children(e, walk);
    if (rebuilt->kind == ExprKind::Not && !is_atom(*rebuilt->left)) {
      const std::string key = print_expr(*rebuilt->left);
      auto it = neg_names.find(key);
      if (it == neg_names.end()) {
        std::string name = current_rule + "__neg" + std::to_string(++counter);
        while (g.has_rule(name) || !used_names.insert(name).second)
          name += "_x";
        it = neg_names.emplace(key, name).first;
        pending.emplace_back(name, rebuilt->left);
      }
      return mk_not(mk_nonterminal(it->second));
    }
    return rebuilt;
  };

  for (const auto& [name, body] : g.rules()) {
    current_rule = name;
    out.set_rule(name, walk(body));
  }
  current_rule = "start";
  out.start = walk(g.start);
  out.requires_eq_mode = g.requires_eq_mode;
  for (auto& [name, body] : pending) out.set_rule(name, body);
  return out;
}

Splitter::Splitter(const Grammar& g, const ApproxTable& approx)
    : in_(&g), approx_(&approx) {}

ExprPtr Splitter::g0_of_rule(const std::string& name) {
  const std::string companion = name + "__g0";
  if (!companions_.count(companion)) {
    const ExprPtr* body = in_->find_rule(name);
    if (!body) throw Error("split: undefined nonterminal " + name);
    // Reserve first so recursive references stop at the name.
    companions_.emplace(companion, nullptr);
    companion_order_.push_back(companion);
    companions_[companion] = g0(*body);
  }
  return mk_nonterminal(companion);
}

ExprPtr Splitter::g0(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Empty:
      return mk_empty();
    case ExprKind::Terminal:
      return mk_fail();
    case ExprKind::NonTerminal:
      return g0_of_rule(e->name);
    case ExprKind::Seq:
      if (approx_->of(*e->left).may_empty())
        return mk_seq(g0(e->left), g0(e->right));
      return mk_fail();
    case ExprKind::Choice:
      if (approx_->of(*e->left).may_fail())
        return mk_choice(g0(e->left), g0(e->right));
      return g0(e->left);
    case ExprKind::Not:
      return mk_not(mk_choice(g1(e->left), g0(e->left)));
    case ExprKind::Indent:
      return mk_indent(e->rel, g0(e->left));
    case ExprKind::Loc:
      return mk_loc(e->rel, g0(e->left));
    case ExprKind::Align:
      return mk_align(g0(e->left));
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Opt:
      throw Error("split requires a repetition-free grammar");
  }
  throw Error("split: unreachable");
}

ExprPtr Splitter::g1(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Empty:
      return mk_fail();
    case ExprKind::Terminal:
      return e;
    case ExprKind::NonTerminal:
      return e;
    case ExprKind::Seq: {
      // g1(p)g1(q) / g1(p)g0(q) / g0(p)g1(q)
      const ExprPtr p1 = g1(e->left), q1 = g1(e->right);
      const ExprPtr p0 = g0(e->left), q0 = g0(e->right);
      return mk_choice(mk_seq(p1, q1),
                       mk_choice(mk_seq(p1, q0), mk_seq(p0, q1)));
    }
    case ExprKind::Choice:
      if (approx_->of(*e->left).may_fail())
        return mk_choice(g1(e->left), g1(e->right));
      return g1(e->left);
    case ExprKind::Not:
      return mk_fail();
    case ExprKind::Indent:
      return mk_indent(e->rel, g1(e->left));
    case ExprKind::Loc:
      return mk_loc(e->rel, g1(e->left));
    case ExprKind::Align:
      return mk_align(g1(e->left));
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Opt:
      throw Error("split requires a repetition-free grammar");
  }
  throw Error("split: unreachable");
}

Grammar Splitter::finish() {
  Grammar out;
  for (const auto& [name, body] : in_->rules()) out.set_rule(name, g1(body));
  out.start = mk_choice(g1(in_->start), g0(in_->start));
  out.requires_eq_mode = in_->requires_eq_mode;
  for (const std::string& name : companion_order_)
    out.set_rule(name, companions_.at(name));
  return out;
}

Grammar split(const Grammar& g, const ApproxTable& approx) {
  g.for_each_body([](const Expr& e) {
    if (e.kind == ExprKind::Star || e.kind == ExprKind::Plus ||
        e.kind == ExprKind::Opt)
      throw Error("split requires a repetition-free grammar (run desugar)");
    if (e.kind == ExprKind::Not && !is_atom(*e.left))
      throw Error(
          "split requires atomic negations (run negation normalization)");
  });
  const WfTable wf = well_formed(g, approx);
  if (!wf.grammar_ok())
    throw NotWellFormed("split requires a well-formed grammar",
                        wf.first_failure());
  Splitter sp(g, approx);
  return sp.finish();
}

namespace {

class AlignEliminator {
 public:
  AlignEliminator(const Grammar& g, const ApproxTable& approx)
      : in_(&g), approx_(&approx) {}

  Grammar run() {
    for (const auto& [name, body] : in_->rules())
      out_.set_rule(name, strip(body));
    out_.start = strip(in_->start);
    out_.requires_eq_mode = in_->requires_eq_mode;
    // Lazily created companions may create more while being built.
    while (!pending_.empty()) {
      auto [companion, source] = pending_.back();
      pending_.pop_back();
      out_.set_rule(companion, push(*in_->find_rule(source)));
    }
    return out_;
  }

 private:
  /// Removes every Align node of e.
  ExprPtr strip(const ExprPtr& e) {
    if (e->kind == ExprKind::Align) return push(e->left);
    return map_children(e, [&](const ExprPtr& c) { return strip(c); });
  }

  /// Alignment-free equivalent of aln(e).
  ExprPtr push(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Empty:
        return e;  // aln(eps) = eps
      case ExprKind::Terminal:
        return mk_loc(DiffRel::eq(), e);  // terminal alignment property
      case ExprKind::NonTerminal:
        return companion(e->name);
      case ExprKind::Choice:
        return mk_choice(push(e->left), push(e->right));
      case ExprKind::Not:
        return mk_not(push(e->left));
      case ExprKind::Loc:
        return mk_loc(e->rel, push(e->left));
      case ExprKind::Indent:
        return mk_indent(e->rel, push(e->left));
      case ExprKind::Align:
        return push(e->left);  // idempotence
      case ExprKind::Seq:
        switch (consumption_class(*e->left, *approx_)) {
          case Consumption::Never:
            return mk_seq(push(e->left), push(e->right));
          case Consumption::Always:
            return mk_seq(push(e->left), strip(e->right));
          case Consumption::Mixed:
            throw AmbiguousConsumption(
                "alignment over a concatenation whose left factor may both "
                "consume and not consume input: " +
                print_expr(*e->left) + " (was the grammar split?)");
        }
        break;
      case ExprKind::Star:
      case ExprKind::Plus:
      case ExprKind::Opt:
        throw Error("alignment elimination requires a repetition-free "
                    "grammar");
    }
    throw Error("alignment elimination: unreachable");
  }

  ExprPtr companion(const std::string& name) {
    const std::string comp = name + "__aln";
    if (created_.insert(comp).second) {
      if (!in_->find_rule(name))
        throw Error("alignment elimination: undefined nonterminal " + name);
      pending_.emplace_back(comp, name);
    }
    return mk_nonterminal(comp);
  }

  const Grammar* in_;
  const ApproxTable* approx_;
  Grammar out_;
  std::set<std::string> created_;
  std::vector<std::pair<std::string, std::string>> pending_;
};

class PositionEliminator {
 public:
  explicit PositionEliminator(const Grammar& g) : in_(&g) {}

  Grammar run() {
    for (const auto& [name, body] : in_->rules())
      out_.set_rule(name, strip(body));
    out_.start = strip(in_->start);
    while (!pending_.empty()) {
      auto [companion, source, rel] = pending_.back();
      pending_.pop_back();
      out_.set_rule(companion, push(rel, *in_->find_rule(source)));
    }
    // Valid only under token mode `=` with the alignment flag down.
    out_.requires_eq_mode = true;
    return out_;
  }

 private:
  ExprPtr strip(const ExprPtr& e) {
    if (e->kind == ExprKind::Loc) return push(e->rel, e->left);
    if (e->kind == ExprKind::Align)
      throw Error("position elimination requires an alignment-free grammar");
    return map_children(e, [&](const ExprPtr& c) { return strip(c); });
  }

  /// Position-free equivalent of loc(s, e) in the final grammar.
  ExprPtr push(const DiffRel& s, const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Empty:
        return e;
      case ExprKind::Terminal:
        return mk_indent(s, e);  // loc and ind agree on terminals
      case ExprKind::NonTerminal:
        return companion(e->name, s);
      case ExprKind::Seq:
        return mk_seq(push(s, e->left), push(s, e->right));
      case ExprKind::Choice:
        return mk_choice(push(s, e->left), push(s, e->right));
      case ExprKind::Not:
        return mk_not(push(s, e->left));
      case ExprKind::Star:
        return mk_star(push(s, e->left));
      case ExprKind::Indent:
        return mk_indent(e->rel, push(s, e->left));
      case ExprKind::Loc:
        return push(e->rel, e->left);  // inner mode cancels the outer
      case ExprKind::Align:
        throw Error(
            "position elimination requires an alignment-free grammar");
      case ExprKind::Plus:
      case ExprKind::Opt:
        throw Error("position elimination requires a desugared grammar");
    }
    throw Error("position elimination: unreachable");
  }

  ExprPtr companion(const std::string& name, const DiffRel& s) {
    const std::string comp = name + "__loc_" + rel_slug(s);
    if (created_.insert(comp).second) {
      if (!in_->find_rule(name))
        throw Error("position elimination: undefined nonterminal " + name);
      pending_.emplace_back(comp, name, s);
    }
    return mk_nonterminal(comp);
  }

  const Grammar* in_;
  Grammar out_;
  std::set<std::string> created_;
  std::vector<std::tuple<std::string, std::string, DiffRel>> pending_;
};

}  // namespace

Grammar eliminate_alignment(const Grammar& g, const ApproxTable& approx) {
  return AlignEliminator(g, approx).run();
}

Grammar eliminate_position(const Grammar& g) {
  return PositionEliminator(g).run();
}

Grammar simplify_fail_units(const Grammar& g) {
  std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& e)
      -> ExprPtr {
    const ExprPtr r = map_children(e, walk);
    if (r->kind == ExprKind::Choice) {
      if (is_fail(*r->left)) return r->right;
      if (is_fail(*r->right)) return r->left;
    }
    if (r->kind == ExprKind::Seq && is_fail(*r->left)) return r->left;
    return r;
  };
  Grammar out;
  for (const auto& [name, body] : g.rules()) out.set_rule(name, walk(body));
  out.start = walk(g.start);
  out.requires_eq_mode = g.requires_eq_mode;
  return out;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Desugar: return "desugar";
    case Stage::Disjoint: return "disjoint";
    case Stage::Negnorm: return "negnorm";
    case Stage::Split: return "split";
    case Stage::Dealign: return "dealign";
    case Stage::Deloc: return "deloc";
  }
  return "?";
}

Stage parse_stage(const std::string& name) {
  for (Stage s : {Stage::Desugar, Stage::Disjoint, Stage::Negnorm,
                  Stage::Split, Stage::Dealign, Stage::Deloc})
    if (name == stage_name(s)) return s;
  throw Error("unknown pipeline stage '" + name + "'");
}

PipelineResult run_pipeline(const Grammar& g, Stage upto,
                            ApproxVariant variant, bool simplify) {
  PipelineResult result;
  result.variant = variant;
  Grammar cur = g;

  auto record = [&](Stage s) {
    result.stages.push_back(
        StageMetrics{s, cur.rules().size(), cur.total_nodes()});
  };
  auto done = [&](Stage s) { return static_cast<int>(upto) < static_cast<int>(s); };

  cur = desugar(cur);
  record(Stage::Desugar);
  if (!done(Stage::Disjoint)) {
    cur = make_disjoint(cur);
    record(Stage::Disjoint);
  }
  if (!done(Stage::Negnorm)) {
    cur = normalize_negations(cur);
    record(Stage::Negnorm);
  }
  if (!done(Stage::Split)) {
    const ApproxTable approx = approximate(cur, variant);
    cur = split(cur, approx);  // runs the well-formedness gate
    record(Stage::Split);
  }
  if (!done(Stage::Dealign)) {
    const ApproxTable approx = approximate(cur, variant);
    cur = eliminate_alignment(cur, approx);
    record(Stage::Dealign);
  }
  if (!done(Stage::Deloc)) {
    cur = eliminate_position(cur);
    record(Stage::Deloc);
  }
  if (simplify) cur = simplify_fail_units(cur);

  result.grammar = std::move(cur);
  return result;
}

}  // namespace ipeg
