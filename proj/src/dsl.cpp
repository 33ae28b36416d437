#include "ipeg/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "ipeg/errors.hpp"

namespace ipeg {

namespace {

constexpr const char* kRequiresHeader =
    "# requires: token-mode = eq, initial-align = false";

enum class Tok {
  Ident,
  TerminalLit,
  Number,
  Arrow,     // <-
  Semi,      // ;
  Slash,     // /
  Bang,      // !
  Star,      // *
  Plus,      // +
  Question,  // ?
  LParen,    // (
  RParen,    // )
  Comma,     // ,
  LBrack,    // [
  RBrack,    // ]
  DotDot,    // ..
  RelEq,     // =
  RelGt,     // >
  RelGe,     // >=
  End,
};

struct Lexeme {
  Tok tok;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Lexeme> run() {
    std::vector<Lexeme> out;
    for (;;) {
      skip_ws();
      const std::size_t line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back({Tok::Ident, ident(), line, col});
      } else if (c == '"') {
        out.push_back({Tok::TerminalLit, quoted(), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        out.push_back({Tok::Number, number(), line, col});
      } else if (c == '<' && peek(1) == '-') {
        advance(2);
        out.push_back({Tok::Arrow, "<-", line, col});
      } else if (c == '.' && peek(1) == '.') {
        advance(2);
        out.push_back({Tok::DotDot, "..", line, col});
      } else if (c == '>' && peek(1) == '=') {
        advance(2);
        out.push_back({Tok::RelGe, ">=", line, col});
      } else {
        Tok t;
        switch (c) {
          case ';': t = Tok::Semi; break;
          case '/': t = Tok::Slash; break;
          case '!': t = Tok::Bang; break;
          case '*': t = Tok::Star; break;
          case '+': t = Tok::Plus; break;
          case '?': t = Tok::Question; break;
          case '(': t = Tok::LParen; break;
          case ')': t = Tok::RParen; break;
          case ',': t = Tok::Comma; break;
          case '[': t = Tok::LBrack; break;
          case ']': t = Tok::RBrack; break;
          case '=': t = Tok::RelEq; break;
          case '>': t = Tok::RelGt; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'",
                              line, col);
        }
        advance(1);
        out.push_back({t, std::string(1, c), line, col});
      }
    }
  }

 private:
  char peek(std::size_t k) const {
    return pos_ + k < text_.size() ? text_[pos_ + k] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        advance(1);
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
        continue;
      }
      return;
    }
  }

  std::string ident() {
    std::string s;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      s += text_[pos_];
      advance(1);
    }
    return s;
  }

  std::string quoted() {
    const std::size_t line = line_, col = col_;
    advance(1);  // opening quote
    std::string s;
    while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
      s += text_[pos_];
      advance(1);
    }
    if (pos_ >= text_.size() || text_[pos_] != '"')
      throw SyntaxError("unterminated terminal literal", line, col);
    advance(1);
    if (s.empty()) throw SyntaxError("empty terminal name", line, col);
    return s;
  }

  std::string number() {
    std::string s;
    if (text_[pos_] == '-') {
      s += '-';
      advance(1);
    }
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      s += text_[pos_];
      advance(1);
    }
    return s;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Lexeme> toks) : toks_(std::move(toks)) {}

  Grammar parse() {
    Grammar g;
    while (cur().tok != Tok::End) {
      const Lexeme name = expect(Tok::Ident, "rule name");
      expect(Tok::Arrow, "'<-'");
      ExprPtr body = parse_choice();
      expect(Tok::Semi, "';'");
      if (name.text == "start") {
        if (g.start)
          throw SyntaxError("duplicate start rule", name.line, name.col);
        g.start = std::move(body);
      } else {
        if (g.has_rule(name.text))
          throw SyntaxError("duplicate rule " + name.text, name.line,
                            name.col);
        g.set_rule(name.text, std::move(body));
      }
    }
    if (!g.start) throw SyntaxError("missing start rule", 1, 1);
    check_references(g);
    return g;
  }

 private:
  const Lexeme& cur() const { return toks_[pos_]; }

  const Lexeme& next() { return toks_[pos_++]; }

  Lexeme expect(Tok t, const std::string& what) {
    if (cur().tok != t)
      throw SyntaxError("expected " + what + ", got '" + cur().text + "'",
                        cur().line, cur().col);
    return next();
  }

  bool starts_atom(Tok t) const {
    return t == Tok::Ident || t == Tok::TerminalLit || t == Tok::LParen ||
           t == Tok::Bang;
  }

  ExprPtr parse_choice() {
    ExprPtr left = parse_seq();
    if (cur().tok == Tok::Slash) {
      next();
      return mk_choice(std::move(left), parse_choice());
    }
    return left;
  }

  ExprPtr parse_seq() {
    std::vector<ExprPtr> parts;
    parts.push_back(parse_prefix());
    while (starts_atom(cur().tok)) parts.push_back(parse_prefix());
    ExprPtr e = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      e = mk_seq(parts[i], std::move(e));
    return e;
  }

  ExprPtr parse_prefix() {
    if (cur().tok == Tok::Bang) {
      next();
      return mk_not(parse_prefix());
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_atom();
    for (;;) {
      switch (cur().tok) {
        case Tok::Star: next(); e = mk_star(std::move(e)); break;
        case Tok::Plus: next(); e = mk_plus(std::move(e)); break;
        case Tok::Question: next(); e = mk_opt(std::move(e)); break;
        default: return e;
      }
    }
  }

  DiffRel parse_relation() {
    const Lexeme& l = cur();
    switch (l.tok) {
      case Tok::RelEq: next(); return DiffRel::eq();
      case Tok::RelGt: next(); return DiffRel::gt();
      case Tok::RelGe: next(); return DiffRel::ge();
      case Tok::Ident:
        if (l.text == "any") {
          next();
          return DiffRel::any();
        }
        if (l.text == "diff") {
          next();
          expect(Tok::LBrack, "'['");
          auto bound = [&]() -> std::int64_t {
            const Lexeme n = next();
            try {
              return std::stoll(n.text);
            } catch (const std::exception&) {
              throw SyntaxError("relation bound out of range", n.line, n.col);
            }
          };
          std::optional<std::int64_t> lo, hi;
          if (cur().tok == Tok::Number) lo = bound();
          expect(Tok::DotDot, "'..'");
          if (cur().tok == Tok::Number) hi = bound();
          expect(Tok::RBrack, "']'");
          if (lo && hi && *lo > *hi)
            throw SyntaxError("malformed relation literal: empty interval",
                              l.line, l.col);
          return DiffRel(lo, hi);
        }
        break;
      default:
        break;
    }
    throw SyntaxError("expected relation, got '" + l.text + "'", l.line,
                      l.col);
  }

  ExprPtr parse_atom() {
    const Lexeme& l = cur();
    switch (l.tok) {
      case Tok::TerminalLit:
        return mk_terminal(next().text);
      case Tok::LParen: {
        next();
        ExprPtr e = parse_choice();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (l.text == "eps") {
          next();
          return mk_empty();
        }
        if (l.text == "ind" || l.text == "loc") {
          const bool is_ind = l.text == "ind";
          next();
          expect(Tok::LParen, "'('");
          DiffRel r = parse_relation();
          expect(Tok::Comma, "','");
          ExprPtr e = parse_choice();
          expect(Tok::RParen, "')'");
          return is_ind ? mk_indent(r, std::move(e))
                        : mk_loc(r, std::move(e));
        }
        if (l.text == "aln") {
          next();
          expect(Tok::LParen, "'('");
          ExprPtr e = parse_choice();
          expect(Tok::RParen, "')'");
          return mk_align(std::move(e));
        }
        if (l.text == "start")
          throw SyntaxError("'start' cannot be referenced as a nonterminal",
                            l.line, l.col);
        return mk_nonterminal(next().text);
      }
      default:
        throw SyntaxError("expected expression, got '" + l.text + "'", l.line,
                          l.col);
    }
  }

  void check_references(const Grammar& g) const {
    std::vector<std::string> missing;
    g.for_each_body([&](const Expr& e) {
      if (e.kind == ExprKind::NonTerminal && !g.has_rule(e.name) &&
          std::find(missing.begin(), missing.end(), e.name) == missing.end())
        missing.push_back(e.name);
    });
    if (!missing.empty()) {
      std::string msg = "undefined nonterminal";
      if (missing.size() > 1) msg += "s";
      for (const auto& m : missing) msg += " " + m;
      throw SyntaxError(msg, 1, 1);
    }
  }

  std::vector<Lexeme> toks_;
  std::size_t pos_ = 0;
};

// Precedence levels for printing: 0 choice, 1 seq, 2 prefix, 3 postfix,
// 4 atom.
int level_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Choice: return 0;
    case ExprKind::Seq: return 1;
    case ExprKind::Not: return 2;
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::Opt: return 3;
    default: return 4;
  }
}

void print_into(const Expr& e, int min_level, std::string& out) {
  const bool parens = level_of(e) < min_level;
  if (parens) out += "(";
  switch (e.kind) {
    case ExprKind::Empty:
      out += "eps";
      break;
    case ExprKind::Terminal:
      out += "\"" + e.name + "\"";
      break;
    case ExprKind::NonTerminal:
      out += e.name;
      break;
    case ExprKind::Seq:
      print_into(*e.left, 2, out);
      out += " ";
      print_into(*e.right, 1, out);
      break;
    case ExprKind::Choice:
      print_into(*e.left, 1, out);
      out += " / ";
      print_into(*e.right, 0, out);
      break;
    case ExprKind::Not:
      out += "!";
      print_into(*e.left, 2, out);
      break;
    case ExprKind::Star:
      print_into(*e.left, 3, out);
      out += "*";
      break;
    case ExprKind::Plus:
      print_into(*e.left, 3, out);
      out += "+";
      break;
    case ExprKind::Opt:
      print_into(*e.left, 3, out);
      out += "?";
      break;
    case ExprKind::Indent:
      out += "ind(" + format_rel(e.rel) + ", ";
      print_into(*e.left, 0, out);
      out += ")";
      break;
    case ExprKind::Loc:
      out += "loc(" + format_rel(e.rel) + ", ";
      print_into(*e.left, 0, out);
      out += ")";
      break;
    case ExprKind::Align:
      out += "aln(";
      print_into(*e.left, 0, out);
      out += ")";
      break;
  }
  if (parens) out += ")";
}

}  // namespace

Grammar parse_grammar_text(const std::string& text) {
  Grammar g = Parser(Lexer(text).run()).parse();
  // Recognize the validity pragma written by position elimination.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r'))
      line.pop_back();
    if (line == kRequiresHeader) {
      g.requires_eq_mode = true;
      break;
    }
    pos = eol + 1;
  }
  return g;
}

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(e, 0, out);
  return out;
}

std::string pretty_print(const Grammar& g) {
  std::string out;
  if (g.requires_eq_mode) out += std::string(kRequiresHeader) + "\n";
  for (const auto& [name, body] : g.rules())
    out += name + " <- " + print_expr(*body) + ";\n";
  if (g.start) out += "start <- " + print_expr(*g.start) + ";\n";
  return out;
}

const char* kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::Empty: return "empty";
    case ExprKind::Terminal: return "terminal";
    case ExprKind::NonTerminal: return "nonterminal";
    case ExprKind::Seq: return "seq";
    case ExprKind::Choice: return "choice";
    case ExprKind::Not: return "not";
    case ExprKind::Star: return "star";
    case ExprKind::Plus: return "plus";
    case ExprKind::Opt: return "opt";
    case ExprKind::Indent: return "indent";
    case ExprKind::Loc: return "loc";
    case ExprKind::Align: return "align";
  }
  return "?";
}

}  // namespace ipeg
