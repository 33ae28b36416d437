#include "ipeg/interp.hpp"

#include <variant>

#include "ipeg/errors.hpp"

namespace ipeg {

bool ParseState::operator==(const ParseState& o) const {
  const auto a = remaining();
  const auto b = o.remaining();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return indents == o.indents && align == o.align;
}

std::string ParseState::to_string() const {
  std::string out = "(";
  bool first = true;
  for (const Token& t : remaining()) {
    if (!first) out += " ";
    first = false;
    out += t.name + "@" + std::to_string(t.col);
  }
  out += ", " + indents.to_string() + ", ";
  out += align ? "tru" : "fls";
  return out + ")";
}

ParseState initial_state(std::vector<Token> tokens) {
  ParseState s;
  s.input = std::make_shared<const std::vector<Token>>(std::move(tokens));
  s.pos = 0;
  s.indents = IndentSet::all();
  s.align = false;
  return s;
}

Outcome Outcome::success(ParseState s) {
  Outcome o;
  o.kind = Kind::Success;
  o.state = std::move(s);
  return o;
}

Outcome Outcome::failure() { return Outcome{}; }

Outcome Outcome::fuel_exhausted(std::uint64_t spent) {
  Outcome o;
  o.kind = Kind::FuelExhausted;
  o.fuel_spent = spent;
  return o;
}

bool Outcome::operator==(const Outcome& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Success) return *state == *o.state;
  return true;
}

std::string Outcome::to_string() const {
  switch (kind) {
    case Kind::Success: return "T" + state->to_string();
    case Kind::Failure: return "_|_";
    case Kind::FuelExhausted:
      return "fuel exhausted (" + std::to_string(fuel_spent) + ")";
  }
  return "?";
}

namespace {

// Continuation frames of the parsing machine.  Nonterminal expansion
// pushes no frame, so left recursion loops through the fuel counter in
// constant memory.

struct SeqK {
  const Expr* right;
};
struct ChoiceK {
  const Expr* first;  // for the strict-semantics approximation lookup
  const Expr* second;
  ParseState saved;
};
struct ProbeK {  // strict choice: second branch runs, result discarded
  ParseState winner;
};
struct NotK {
  ParseState saved;
};
struct StarK {
  const Expr* body;
  ParseState last;
};
struct PlusK {
  const Expr* body;
};
struct OptK {
  ParseState saved;
};
struct IndK {
  DiffRel rel;
  IndentSet outer;
};
struct LocK {
  DiffRel saved_mode;
};
struct AlnK {
  bool saved_align;
};

using Frame = std::variant<SeqK, ChoiceK, ProbeK, NotK, StarK, PlusK, OptK,
                           IndK, LocK, AlnK>;

Outcome run(const Grammar& g, const ExprPtr& root, const DiffRel& mode0,
            const ParseState& s0, std::uint64_t fuel,
            const ApproxTable* strict) {
  std::vector<Frame> stack;
  DiffRel mode = mode0;
  const Expr* e = root.get();
  ParseState s = s0;

  std::uint64_t left = fuel;
  bool up = false;   // evaluating (down) vs returning a result (up)
  bool ok = false;   // meaningful in the up phase
  ParseState res;    // meaningful when up && ok

  for (;;) {
    if (!up) {
      if (left == 0) return Outcome::fuel_exhausted(fuel);
      --left;
      switch (e->kind) {
        case ExprKind::Empty:
          up = true;
          ok = true;
          res = s;
          break;
        case ExprKind::Terminal: {
          // Clause 2.  With the flag down the head column must relate
          // to some candidate baseline; with it up the head must sit
          // on a candidate exactly.  Consuming lowers the flag.
          up = true;
          ok = false;
          const auto rest = s.remaining();
          if (!rest.empty() && rest.front().name == e->name) {
            const Col i = rest.front().col;
            if (s.align) {
              if (s.indents.contains(i)) {
                ok = true;
                res = s;
                ++res.pos;
                res.indents = IndentSet::single(i);
                res.align = false;
              }
            } else {
              const IndentSet narrowed =
                  s.indents.intersect(IndentSet::single(i).image(mode));
              if (!narrowed.empty()) {
                ok = true;
                res = s;
                ++res.pos;
                res.indents = narrowed;
                res.align = false;
              }
            }
          }
          break;
        }
        case ExprKind::NonTerminal: {
          const ExprPtr* body = g.find_rule(e->name);
          if (!body)
            throw Error("parse of undefined nonterminal " + e->name);
          e = body->get();
          continue;
        }
        case ExprKind::Seq:
          stack.push_back(SeqK{e->right.get()});
          e = e->left.get();
          continue;
        case ExprKind::Choice:
          stack.push_back(ChoiceK{e->left.get(), e->right.get(), s});
          e = e->left.get();
          continue;
        case ExprKind::Not:
          stack.push_back(NotK{s});
          e = e->left.get();
          continue;
        case ExprKind::Star:
          stack.push_back(StarK{e->left.get(), s});
          e = e->left.get();
          continue;
        case ExprKind::Plus:
          stack.push_back(PlusK{e->left.get()});
          e = e->left.get();
          continue;
        case ExprKind::Opt:
          stack.push_back(OptK{s});
          e = e->left.get();
          continue;
        case ExprKind::Indent: {
          // Clause 8: parse under the preimage of the candidate set.
          stack.push_back(IndK{e->rel, s.indents});
          s.indents = s.indents.preimage(e->rel);
          e = e->left.get();
          continue;
        }
        case ExprKind::Loc:
          stack.push_back(LocK{mode});
          mode = e->rel;
          e = e->left.get();
          continue;
        case ExprKind::Align:
          stack.push_back(AlnK{s.align});
          s.align = true;
          e = e->left.get();
          continue;
      }
    } else {
      if (stack.empty())
        return ok ? Outcome::success(std::move(res)) : Outcome::failure();
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (auto* f = std::get_if<SeqK>(&frame)) {
        if (ok) {
          up = false;
          e = f->right;
          s = std::move(res);
        }
        // On failure the whole concatenation fails: stay up.
      } else if (auto* f = std::get_if<ChoiceK>(&frame)) {
        if (ok) {
          if (strict && strict->of(*f->first).may_fail()) {
            // Strict clause 5: the second branch must also reach an
            // outcome, which is then discarded.
            stack.push_back(ProbeK{std::move(res)});
            up = false;
            e = f->second;
            s = std::move(f->saved);
          }
          // Otherwise propagate the first branch's success.
        } else {
          up = false;
          e = f->second;
          s = std::move(f->saved);
        }
      } else if (auto* f = std::get_if<ProbeK>(&frame)) {
        ok = true;
        res = std::move(f->winner);
      } else if (auto* f = std::get_if<NotK>(&frame)) {
        if (ok) {
          ok = false;
        } else {
          ok = true;
          res = std::move(f->saved);
        }
      } else if (auto* f = std::get_if<StarK>(&frame)) {
        if (ok) {
          const Expr* body = f->body;
          stack.push_back(StarK{body, res});
          up = false;
          e = body;
          s = res;
        } else {
          ok = true;
          res = std::move(f->last);
        }
      } else if (auto* f = std::get_if<PlusK>(&frame)) {
        if (ok) {
          // One mandatory iteration done; continue as repetition.
          const Expr* body = f->body;
          stack.push_back(StarK{body, res});
          up = false;
          e = body;
          s = res;
        }
        // On failure the plus fails: stay up.
      } else if (auto* f = std::get_if<OptK>(&frame)) {
        if (!ok) {
          ok = true;
          res = std::move(f->saved);
        }
      } else if (auto* f = std::get_if<IndK>(&frame)) {
        if (ok) res.indents = f->outer.intersect(res.indents.image(f->rel));
      } else if (auto* f = std::get_if<LocK>(&frame)) {
        mode = f->saved_mode;
      } else if (auto* f = std::get_if<AlnK>(&frame)) {
        if (ok) res.align = f->saved_align && res.align;
      }
    }
  }
}

}  // namespace

Outcome parse_std(const Grammar& g, const ExprPtr& e, const DiffRel& mode,
                  const ParseState& s, std::uint64_t fuel) {
  return run(g, e, mode, s, fuel, nullptr);
}

Outcome parse_strict(const Grammar& g, const ExprPtr& e, const DiffRel& mode,
                     const ParseState& s, const ApproxTable& approx,
                     std::uint64_t fuel) {
  return run(g, e, mode, s, fuel, &approx);
}

}  // namespace ipeg
