#include "ipeg/ast.hpp"

#include <algorithm>
#include <deque>

namespace ipeg {

namespace {

ExprPtr node(ExprKind k, std::string name, ExprPtr l, ExprPtr r, DiffRel rel) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->name = std::move(name);
  e->left = std::move(l);
  e->right = std::move(r);
  e->rel = rel;
  return e;
}

}  // namespace

ExprPtr mk_empty() {
  static const ExprPtr e = node(ExprKind::Empty, "", nullptr, nullptr, {});
  return e;
}

ExprPtr mk_terminal(std::string name) {
  return node(ExprKind::Terminal, std::move(name), nullptr, nullptr, {});
}

ExprPtr mk_nonterminal(std::string name) {
  return node(ExprKind::NonTerminal, std::move(name), nullptr, nullptr, {});
}

ExprPtr mk_seq(ExprPtr l, ExprPtr r) {
  return node(ExprKind::Seq, "", std::move(l), std::move(r), {});
}

ExprPtr mk_choice(ExprPtr l, ExprPtr r) {
  return node(ExprKind::Choice, "", std::move(l), std::move(r), {});
}

ExprPtr mk_not(ExprPtr p) {
  return node(ExprKind::Not, "", std::move(p), nullptr, {});
}

ExprPtr mk_star(ExprPtr p) {
  return node(ExprKind::Star, "", std::move(p), nullptr, {});
}

ExprPtr mk_plus(ExprPtr p) {
  return node(ExprKind::Plus, "", std::move(p), nullptr, {});
}

ExprPtr mk_opt(ExprPtr p) {
  return node(ExprKind::Opt, "", std::move(p), nullptr, {});
}

ExprPtr mk_indent(DiffRel r, ExprPtr p) {
  return node(ExprKind::Indent, "", std::move(p), nullptr, r);
}

ExprPtr mk_loc(DiffRel r, ExprPtr p) {
  return node(ExprKind::Loc, "", std::move(p), nullptr, r);
}

ExprPtr mk_align(ExprPtr p) {
  return node(ExprKind::Align, "", std::move(p), nullptr, {});
}

ExprPtr mk_fail() {
  static const ExprPtr f = mk_not(mk_empty());
  return f;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Empty:
      return true;
    case ExprKind::Terminal:
    case ExprKind::NonTerminal:
      return a.name == b.name;
    case ExprKind::Seq:
    case ExprKind::Choice:
      return expr_equal(*a.left, *b.left) && expr_equal(*a.right, *b.right);
    case ExprKind::Not:
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Opt:
    case ExprKind::Align:
      return expr_equal(*a.left, *b.left);
    case ExprKind::Indent:
    case ExprKind::Loc:
      return a.rel == b.rel && expr_equal(*a.left, *b.left);
  }
  return false;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 0;
  for_each_node(e, [&](const Expr&) { ++n; });
  return n;
}

bool contains_kind(const Expr& e, ExprKind k) {
  bool found = false;
  for_each_node(e, [&](const Expr& n) { found = found || n.kind == k; });
  return found;
}

void for_each_node(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  if (e.left) for_each_node(*e.left, fn);
  if (e.right) for_each_node(*e.right, fn);
}

bool Grammar::has_rule(const std::string& name) const {
  return index_.count(name) != 0;
}

const ExprPtr* Grammar::find_rule(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return nullptr;
  return &rules_[it->second].second;
}

void Grammar::set_rule(const std::string& name, ExprPtr body) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    rules_[it->second].second = std::move(body);
    return;
  }
  index_.emplace(name, rules_.size());
  rules_.emplace_back(name, std::move(body));
}

std::set<std::string> Grammar::terminals() const {
  std::set<std::string> out;
  for_each_body([&](const Expr& e) {
    if (e.kind == ExprKind::Terminal) out.insert(e.name);
  });
  return out;
}

std::size_t Grammar::total_nodes() const {
  std::size_t n = 0;
  for_each_body([&](const Expr&) { ++n; });
  return n;
}

std::string Grammar::fresh_name(const std::string& base) const {
  if (!has_rule(base)) return base;
  for (int k = 2;; ++k) {
    const std::string cand = base + "_" + std::to_string(k);
    if (!has_rule(cand)) return cand;
  }
}

void Grammar::for_each_body(const std::function<void(const Expr&)>& fn) const {
  for (const auto& [name, body] : rules_) for_each_node(*body, fn);
  if (start) for_each_node(*start, fn);
}

ValidationReport validate(const Grammar& g) {
  ValidationReport rep;
  if (!g.start) {
    rep.errors.push_back("missing start expression");
    return rep;
  }

  g.for_each_body([&](const Expr& e) {
    switch (e.kind) {
      case ExprKind::Star:
      case ExprKind::Plus:
      case ExprKind::Opt:
        rep.repetition_free = false;
        break;
      case ExprKind::Align:
        rep.alignment_free = false;
        break;
      case ExprKind::Loc:
        rep.position_free = false;
        if (!e.rel.is_total())
          rep.warnings.push_back("relation " + format_rel(e.rel) +
                                 " under loc is not in Rel+");
        break;
      case ExprKind::Indent:
        if (!e.rel.is_total())
          rep.warnings.push_back("relation " + format_rel(e.rel) +
                                 " under ind is not in Rel+");
        break;
      case ExprKind::NonTerminal:
        if (!g.has_rule(e.name))
          rep.errors.push_back("undefined nonterminal " + e.name);
        break;
      default:
        break;
    }
  });

  // Reachability from the start expression.
  std::set<std::string> reached;
  std::deque<const Expr*> work{g.start.get()};
  while (!work.empty()) {
    const Expr* e = work.front();
    work.pop_front();
    if (e->kind == ExprKind::NonTerminal && g.has_rule(e->name) &&
        reached.insert(e->name).second)
      work.push_back(g.find_rule(e->name)->get());
    if (e->left) work.push_back(e->left.get());
    if (e->right) work.push_back(e->right.get());
  }
  for (const auto& [name, body] : g.rules())
    if (!reached.count(name))
      rep.warnings.push_back("rule " + name + " is unreachable from start");

  // Deduplicate repeated messages (the same undefined name may occur
  // many times).
  auto dedup = [](std::vector<std::string>& v) {
    std::vector<std::string> out;
    for (auto& s : v)
      if (std::find(out.begin(), out.end(), s) == out.end())
        out.push_back(std::move(s));
    v = std::move(out);
  };
  dedup(rep.errors);
  dedup(rep.warnings);
  return rep;
}

}  // namespace ipeg
