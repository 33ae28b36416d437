#include "ipeg/analysis.hpp"

#include <algorithm>

#include "ipeg/dsl.hpp"

namespace ipeg {

std::vector<int> ApproxSet::to_list() const {
  std::vector<int> out;
  if (may_fail()) out.push_back(-1);
  if (may_empty()) out.push_back(0);
  if (may_consume()) out.push_back(1);
  return out;
}

std::string ApproxSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int n : to_list()) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(n);
  }
  return out + "}";
}

namespace {

ApproxSet star_set(ApproxSet p) {
  ApproxSet s;
  if (p.may_fail()) s.add(0);
  if (p.may_fail() && p.may_consume()) s.add(1);
  return s;
}

ApproxSet seq_set(ApproxSet p, ApproxSet q) {
  ApproxSet s;
  if (p.may_empty() && q.may_empty()) s.add(0);
  if ((p.may_empty() || p.may_consume()) &&
      (q.may_empty() || q.may_consume()) &&
      (p.may_consume() || q.may_consume()))
    s.add(1);
  if ((p.may_empty() || p.may_consume()) && q.may_fail()) s.add(-1);
  if (p.may_fail()) s.add(-1);
  return s;
}

ApproxSet choice_set(ApproxSet p, ApproxSet q) {
  ApproxSet s;
  if (p.may_empty()) s.add(0);
  if (p.may_consume()) s.add(1);
  if (p.may_fail()) s = s | q;
  return s;
}

ApproxSet not_set(ApproxSet p) {
  ApproxSet s;
  if (p.may_fail()) s.add(0);
  if (p.may_empty() || p.may_consume()) s.add(-1);
  return s;
}

}  // namespace

ApproxTable::ApproxTable(const Grammar& g, ApproxVariant variant)
    : variant_(variant) {
  for (const auto& [name, body] : g.rules()) nts_[name] = ApproxSet{};
  // Iterate to the least fixpoint; entries only grow and are bounded,
  // so this terminates.
  for (bool changed = true; changed;) {
    changed = false;
    cache_.clear();
    for (const auto& [name, body] : g.rules()) {
      const ApproxSet next = nts_[name] | eval(*body);
      if (!(next == nts_[name])) {
        nts_[name] = next;
        changed = true;
      }
    }
  }
  // Freeze the cache with every grammar node so that later lookups
  // never mutate the table and it stays shareable across threads.
  cache_.clear();
  g.for_each_body([&](const Expr& n) { eval(n); });
  frozen_ = true;
}

ApproxSet ApproxTable::of(const Expr& e) const { return eval(e); }

ApproxSet ApproxTable::of_rule(const std::string& name) const {
  auto it = nts_.find(name);
  return it == nts_.end() ? ApproxSet{} : it->second;
}

ApproxSet ApproxTable::eval(const Expr& e) const {
  auto it = cache_.find(&e);
  if (it != cache_.end()) return it->second;
  ApproxSet s;
  switch (e.kind) {
    case ExprKind::Empty:
      s.add(0);
      break;
    case ExprKind::Terminal:
      s.add(1);
      s.add(-1);
      break;
    case ExprKind::NonTerminal:
      s = of_rule(e.name);
      break;
    case ExprKind::Seq:
      s = seq_set(eval(*e.left), eval(*e.right));
      break;
    case ExprKind::Choice:
      s = choice_set(eval(*e.left), eval(*e.right));
      break;
    case ExprKind::Not:
      s = not_set(eval(*e.left));
      break;
    case ExprKind::Star:
      s = star_set(eval(*e.left));
      break;
    case ExprKind::Plus: {
      // p+ behaves as p p*.
      const ApproxSet p = eval(*e.left);
      s = seq_set(p, star_set(p));
      break;
    }
    case ExprKind::Opt:
      // p? behaves as p / eps.
      s = choice_set(eval(*e.left), ApproxSet{ApproxSet::kEmpty});
      break;
    case ExprKind::Indent:
    case ExprKind::Loc:
    case ExprKind::Align:
      s = eval(*e.left);
      break;
  }
  if (variant_ == ApproxVariant::clause0 &&
      (s.may_empty() || s.may_consume()))
    s.add(-1);
  if (!frozen_) cache_.emplace(&e, s);
  return s;
}

WfTable::WfTable(const Grammar& g, const ApproxTable& approx)
    : approx_(&approx) {
  for (const auto& [name, body] : g.rules()) {
    nts_[name] = false;
    bodies_[name] = body;
  }
  for (bool changed = true; changed;) {
    changed = false;
    cache_.clear();
    for (const auto& [name, body] : g.rules()) {
      if (!nts_[name] && eval(*body)) {
        nts_[name] = true;
        changed = true;
      }
    }
  }
  cache_.clear();
  g.for_each_body([&](const Expr& n) { eval(n); });
  frozen_ = true;

  grammar_ok_ = true;
  auto scan = [&](const std::string& where, const Expr& body) {
    for_each_node(body, [&](const Expr& n) {
      if (!eval(n) && grammar_ok_) {
        grammar_ok_ = false;
        first_failure_ = where + ": " + witness(n);
      }
    });
  };
  for (const auto& [name, body] : g.rules()) scan("rule " + name, *body);
  if (g.start) scan("start", *g.start);
}

bool WfTable::of(const Expr& e) const { return eval(e); }

bool WfTable::rule_ok(const std::string& name) const {
  auto it = nts_.find(name);
  return it != nts_.end() && it->second;
}

std::string WfTable::first_failure() const { return first_failure_; }

bool WfTable::eval(const Expr& e) const {
  auto it = cache_.find(&e);
  if (it != cache_.end()) return it->second;
  bool ok = false;
  switch (e.kind) {
    case ExprKind::Empty:
    case ExprKind::Terminal:
      ok = true;
      break;
    case ExprKind::NonTerminal: {
      auto nt = nts_.find(e.name);
      ok = nt != nts_.end() && nt->second;
      break;
    }
    case ExprKind::Seq:
      ok = eval(*e.left) &&
           (!approx_->of(*e.left).may_empty() || eval(*e.right));
      break;
    case ExprKind::Choice:
      ok = eval(*e.left) &&
           (!approx_->of(*e.left).may_fail() || eval(*e.right));
      break;
    case ExprKind::Not:
      ok = eval(*e.left);
      break;
    case ExprKind::Star:
      ok = !approx_->of(*e.left).may_empty() && eval(*e.left);
      break;
    case ExprKind::Plus:
      // As p p*, whose star clause demands a non-nullable body.
      ok = eval(*e.left) && !approx_->of(*e.left).may_empty();
      break;
    case ExprKind::Opt:
      ok = eval(*e.left);
      break;
    case ExprKind::Indent:
    case ExprKind::Loc:
      ok = e.rel.is_total() && eval(*e.left);
      break;
    case ExprKind::Align:
      ok = eval(*e.left);
      break;
  }
  if (!frozen_) cache_.emplace(&e, ok);
  return ok;
}

std::string WfTable::witness(const Expr& e) const {
  if (eval(e)) return "well-formed";
  // Walk one failing premise chain; a revisited nonterminal is the
  // recursion cycle that keeps the least fixpoint false.
  std::vector<std::string> path;
  std::string note;
  auto with_note = [&](const std::string& msg) {
    return note.empty() ? msg : note + "; " + msg;
  };
  const Expr* cur = &e;
  for (int guard = 0; guard < 4096; ++guard) {
    switch (cur->kind) {
      case ExprKind::Empty:
      case ExprKind::Terminal:
        return with_note("not well-formed");
      case ExprKind::NonTerminal: {
        auto seen = std::find(path.begin(), path.end(), cur->name);
        if (seen != path.end()) {
          std::string cycle = "recursion cycle: ";
          for (auto it = seen; it != path.end(); ++it) cycle += *it + " -> ";
          return with_note(cycle + cur->name);
        }
        auto b = bodies_.find(cur->name);
        if (b == bodies_.end())
          return with_note("undefined nonterminal " + cur->name);
        path.push_back(cur->name);
        cur = b->second.get();
        break;
      }
      case ExprKind::Seq:
        if (!eval(*cur->left)) {
          cur = cur->left.get();
        } else {
          note = "left factor may succeed without consuming, so the right "
                 "part must be well-formed";
          cur = cur->right.get();
        }
        break;
      case ExprKind::Choice:
        if (!eval(*cur->left)) {
          cur = cur->left.get();
        } else {
          note = "first alternative may fail, so the second must be "
                 "well-formed";
          cur = cur->right.get();
        }
        break;
      case ExprKind::Star:
      case ExprKind::Plus:
        if (approx_->of(*cur->left).may_empty())
          return with_note("repetition body may succeed without consuming "
                           "input");
        cur = cur->left.get();
        break;
      case ExprKind::Indent:
      case ExprKind::Loc:
        if (!cur->rel.is_total())
          return with_note("relation " + format_rel(cur->rel) +
                           " is not in Rel+");
        cur = cur->left.get();
        break;
      case ExprKind::Not:
      case ExprKind::Opt:
      case ExprKind::Align:
        cur = cur->left.get();
        break;
    }
  }
  return "not well-formed (witness search depth exceeded)";
}

Consumption consumption_class(const Expr& e, const ApproxTable& approx) {
  const ApproxSet s = approx.of(e);
  if (!s.may_consume()) return Consumption::Never;
  if (!s.may_empty()) return Consumption::Always;
  return Consumption::Mixed;
}

const char* consumption_name(Consumption c) {
  switch (c) {
    case Consumption::Never: return "never";
    case Consumption::Always: return "always";
    case Consumption::Mixed: return "mixed";
  }
  return "?";
}

}  // namespace ipeg
