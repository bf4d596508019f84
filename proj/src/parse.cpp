// Shared lexer plus recursive-descent parsers for formulas, intervention
// clauses, programs, and tape literals.

#include <cctype>
#include <string>
#include <vector>

#include "causim/interpreter.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"

namespace causim {

ParseError::ParseError(const std::string& message, std::size_t pos, int ln, int col)
    : std::runtime_error("syntax error at " + std::to_string(ln) + ":" + std::to_string(col) + ": " + message),
      position(pos),
      line(ln),
      column(col) {}

namespace {

enum class Tok {
  Var,      // X<digits>
  Num,      // digit run (only 0/1 are legal where used)
  ConstT,
  ConstF,
  LBracket,
  RBracket,
  Less,
  Greater,
  LParen,
  RParen,
  Bang,
  Amp,
  Pipe,
  Arrow,
  DArrow,
  ColonEq,
  Eq,
  BangEq,
  Semi,
  Comma,
  KwIf,
  KwThen,
  KwElse,
  KwEnd,
  KwChoose,
  KwOr,
  KwLoop,
  KwSkip,
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::Num: return "constant";
    case Tok::ConstT: return "'T'";
    case Tok::ConstF: return "'F'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::ColonEq: return "':='";
    case Tok::Eq: return "'='";
    case Tok::BangEq: return "'!='";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwChoose: return "'choose'";
    case Tok::KwOr: return "'or'";
    case Tok::KwLoop: return "'loop'";
    case Tok::KwSkip: return "'skip'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t pos;
  AtomIndex index = 0;  // Var
  long long num = 0;    // Num
};

[[noreturn]] void fail_at(std::string_view src, std::size_t pos, const std::string& message) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < pos && k < src.size(); ++k) {
    if (src[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw ParseError(message, pos, line, col);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t p = 0;
  while (p < src.size()) {
    char c = src[p];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++p;
      continue;
    }
    std::size_t start = p;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t q = p;
      while (q < src.size() && std::isalnum(static_cast<unsigned char>(src[q]))) ++q;
      std::string word(src.substr(p, q - p));
      p = q;
      if (word == "T") {
        out.push_back({Tok::ConstT, start});
      } else if (word == "F") {
        out.push_back({Tok::ConstF, start});
      } else if (word == "if") {
        out.push_back({Tok::KwIf, start});
      } else if (word == "then") {
        out.push_back({Tok::KwThen, start});
      } else if (word == "else") {
        out.push_back({Tok::KwElse, start});
      } else if (word == "end") {
        out.push_back({Tok::KwEnd, start});
      } else if (word == "choose") {
        out.push_back({Tok::KwChoose, start});
      } else if (word == "or") {
        out.push_back({Tok::KwOr, start});
      } else if (word == "loop") {
        out.push_back({Tok::KwLoop, start});
      } else if (word == "skip") {
        out.push_back({Tok::KwSkip, start});
      } else if (word.size() > 1 && word[0] == 'X' &&
                 std::all_of(word.begin() + 1, word.end(),
                             [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
        AtomIndex idx = 0;
        for (std::size_t k = 1; k < word.size(); ++k) {
          idx = idx * 10 + (word[k] - '0');
          if (idx > (AtomIndex(1) << 40)) fail_at(src, start, "variable index too large");
        }
        if (idx < 1) fail_at(src, start, "variable indices start at X1");
        out.push_back({Tok::Var, start, idx});
      } else {
        fail_at(src, start, "unrecognized word '" + word + "'");
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      std::size_t q = p;
      while (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) {
        v = v * 10 + (src[q] - '0');
        if (v > 1000000) fail_at(src, start, "constant too large");
        ++q;
      }
      p = q;
      Token t{Tok::Num, start};
      t.num = v;
      out.push_back(t);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && p + 1 < src.size() && src[p + 1] == b; };
    if (c == '<' && p + 2 < src.size() && src[p + 1] == '-' && src[p + 2] == '>') {
      out.push_back({Tok::DArrow, start});
      p += 3;
    } else if (two('-', '>')) {
      out.push_back({Tok::Arrow, start});
      p += 2;
    } else if (two(':', '=')) {
      out.push_back({Tok::ColonEq, start});
      p += 2;
    } else if (two('!', '=')) {
      out.push_back({Tok::BangEq, start});
      p += 2;
    } else {
      switch (c) {
        case '[': out.push_back({Tok::LBracket, start}); break;
        case ']': out.push_back({Tok::RBracket, start}); break;
        case '<': out.push_back({Tok::Less, start}); break;
        case '>': out.push_back({Tok::Greater, start}); break;
        case '(': out.push_back({Tok::LParen, start}); break;
        case ')': out.push_back({Tok::RParen, start}); break;
        case '!': out.push_back({Tok::Bang, start}); break;
        case '&': out.push_back({Tok::Amp, start}); break;
        case '|': out.push_back({Tok::Pipe, start}); break;
        case '=': out.push_back({Tok::Eq, start}); break;
        case ';': out.push_back({Tok::Semi, start}); break;
        case ',': out.push_back({Tok::Comma, start}); break;
        default:
          fail_at(src, start, std::string("unexpected character '") + c + "'");
      }
      ++p;
    }
  }
  out.push_back({Tok::End, src.size()});
  return out;
}

class Cursor {
 public:
  Cursor(std::string_view src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[k_]; }
  Tok kind() const { return toks_[k_].kind; }
  Token take() { return toks_[k_++]; }

  Token expect(Tok t, const std::string& what) {
    if (kind() != t) fail("expected " + what + ", found " + std::string(tok_name(kind())));
    return take();
  }

  bool accept(Tok t) {
    if (kind() != t) return false;
    ++k_;
    return true;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(src_, toks_[k_].pos, message); }

  [[noreturn]] void fail_here(std::size_t pos, const std::string& message) const { fail_at(src_, pos, message); }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

// --- formula parsing -------------------------------------------------------

PropFormula parse_prop_iff(Cursor& c);

PropFormula parse_prop_primary(Cursor& c) {
  switch (c.kind()) {
    case Tok::Var:
      return PropFormula::atom(c.take().index);
    case Tok::ConstT:
      c.take();
      return PropFormula::top();
    case Tok::ConstF:
      c.take();
      return PropFormula::bottom();
    case Tok::LParen: {
      c.take();
      PropFormula inner = parse_prop_iff(c);
      c.expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::LBracket:
    case Tok::Less:
      c.fail("conditional operators cannot appear inside a consequent");
    default:
      c.fail("expected a propositional formula");
  }
}

PropFormula parse_prop_unary(Cursor& c) {
  if (c.accept(Tok::Bang)) return PropFormula::negation(parse_prop_unary(c));
  return parse_prop_primary(c);
}

PropFormula parse_prop_and(Cursor& c) {
  PropFormula f = parse_prop_unary(c);
  while (c.accept(Tok::Amp)) f = PropFormula::conj(std::move(f), parse_prop_unary(c));
  return f;
}

PropFormula parse_prop_or(Cursor& c) {
  PropFormula f = parse_prop_and(c);
  while (c.accept(Tok::Pipe)) f = PropFormula::disj(std::move(f), parse_prop_and(c));
  return f;
}

PropFormula parse_prop_impl(Cursor& c) {
  PropFormula f = parse_prop_or(c);
  if (c.accept(Tok::Arrow)) {
    PropFormula r = parse_prop_impl(c);
    return PropFormula::disj(PropFormula::negation(std::move(f)), std::move(r));
  }
  return f;
}

PropFormula parse_prop_iff(Cursor& c) {
  PropFormula f = parse_prop_impl(c);
  if (c.accept(Tok::DArrow)) {
    PropFormula r = parse_prop_iff(c);
    PropFormula fwd = PropFormula::disj(PropFormula::negation(f), r);
    PropFormula bwd = PropFormula::disj(PropFormula::negation(std::move(r)), std::move(f));
    return PropFormula::conj(std::move(fwd), std::move(bwd));
  }
  return f;
}

// `T` or a `&`-joined literal list with strictly increasing indices,
// terminated by `closer`.
InterventionSpec parse_ints(Cursor& c, Tok closer) {
  if (c.kind() == Tok::ConstT) {
    c.take();
    if (c.kind() != closer) c.fail("the empty intervention T cannot be conjoined with literals");
    return InterventionSpec();
  }
  std::vector<Literal> lits;
  while (true) {
    bool positive = !c.accept(Tok::Bang);
    std::size_t at = c.peek().pos;
    Token v = c.expect(Tok::Var, "a variable");
    if (!lits.empty() && lits.back().atom.index >= v.index)
      c.fail_here(at, "antecedent indices must be strictly increasing");
    lits.push_back(Literal{Atom(v.index), positive});
    if (c.kind() == closer) break;
    if (c.kind() == Tok::Pipe || c.kind() == Tok::Arrow || c.kind() == Tok::DArrow || c.kind() == Tok::LParen)
      c.fail("antecedents must be conjunctions of literals");
    c.expect(Tok::Amp, "'&' or the closing delimiter");
  }
  return InterventionSpec(std::move(lits));
}

Formula parse_formula_iff(Cursor& c);

Formula parse_formula_unary(Cursor& c) {
  switch (c.kind()) {
    case Tok::Bang:
      c.take();
      return Formula::negation(parse_formula_unary(c));
    case Tok::LBracket: {
      c.take();
      InterventionSpec a = parse_ints(c, Tok::RBracket);
      c.expect(Tok::RBracket, "']'");
      return Formula::box(std::move(a), parse_prop_unary(c));
    }
    case Tok::Less: {
      c.take();
      InterventionSpec a = parse_ints(c, Tok::Greater);
      c.expect(Tok::Greater, "'>'");
      return Formula::diamond(std::move(a), parse_prop_unary(c));
    }
    case Tok::Var:
      return Formula::atom(c.take().index);
    case Tok::ConstT:
      c.take();
      return Formula::top();
    case Tok::ConstF:
      c.take();
      return Formula::bottom();
    case Tok::LParen: {
      c.take();
      Formula inner = parse_formula_iff(c);
      c.expect(Tok::RParen, "')'");
      return inner;
    }
    default:
      c.fail("expected a formula");
  }
}

Formula parse_formula_and(Cursor& c) {
  Formula f = parse_formula_unary(c);
  while (c.accept(Tok::Amp)) f = Formula::conj(std::move(f), parse_formula_unary(c));
  return f;
}

Formula parse_formula_or(Cursor& c) {
  Formula f = parse_formula_and(c);
  while (c.accept(Tok::Pipe)) f = Formula::disj(std::move(f), parse_formula_and(c));
  return f;
}

Formula parse_formula_impl(Cursor& c) {
  Formula f = parse_formula_or(c);
  if (c.accept(Tok::Arrow)) return Formula::implies(std::move(f), parse_formula_impl(c));
  return f;
}

Formula parse_formula_iff(Cursor& c) {
  Formula f = parse_formula_impl(c);
  if (c.accept(Tok::DArrow)) return Formula::iff(std::move(f), parse_formula_iff(c));
  return f;
}

// --- program parsing -------------------------------------------------------

ConditionPtr parse_cond_atom(Cursor& c) {
  Token v = c.expect(Tok::Var, "a variable");
  if (c.accept(Tok::Eq)) {
    if (c.kind() == Tok::Var) return Condition::var_eq_var(Atom(v.index), Atom(c.take().index));
    std::size_t at = c.peek().pos;
    Token n = c.expect(Tok::Num, "a constant or variable");
    if (n.num != 0 && n.num != 1) c.fail_here(at, "constants are 0 or 1");
    return Condition::var_eq_const(Atom(v.index), n.num == 1);
  }
  c.expect(Tok::BangEq, "'=' or '!='");
  Token w = c.expect(Tok::Var, "a variable after '!='");
  return Condition::var_neq_var(Atom(v.index), Atom(w.index));
}

ConditionPtr parse_cond(Cursor& c) {
  ConditionPtr cond = parse_cond_atom(c);
  while (c.accept(Tok::Amp)) cond = Condition::conj(cond, parse_cond_atom(c));
  return cond;
}

StatementPtr parse_prog(Cursor& c);

StatementPtr parse_single_statement(Cursor& c) {
  switch (c.kind()) {
    case Tok::KwLoop:
      c.take();
      return Statement::loop();
    case Tok::KwSkip:
      c.take();
      return Statement::empty();
    case Tok::KwIf: {
      c.take();
      ConditionPtr cond = parse_cond(c);
      c.expect(Tok::KwThen, "'then'");
      StatementPtr then_branch = parse_prog(c);
      c.expect(Tok::KwElse, "'else'");
      StatementPtr else_branch = parse_prog(c);
      c.expect(Tok::KwEnd, "'end'");
      return Statement::if_else(std::move(cond), std::move(then_branch), std::move(else_branch));
    }
    case Tok::KwChoose: {
      c.take();
      std::vector<StatementPtr> branches;
      branches.push_back(parse_prog(c));
      while (c.accept(Tok::KwOr)) branches.push_back(parse_prog(c));
      c.expect(Tok::KwEnd, "'end'");
      return Statement::choose(std::move(branches));
    }
    case Tok::Var: {
      Token v = c.take();
      c.expect(Tok::ColonEq, "':='");
      if (c.accept(Tok::Bang)) {
        Token w = c.expect(Tok::Var, "a variable after '!'");
        return Statement::assign(Atom(v.index), AssignSource::negation_of(Atom(w.index)));
      }
      if (c.kind() == Tok::Var) return Statement::assign(Atom(v.index), AssignSource::copy_of(Atom(c.take().index)));
      std::size_t at = c.peek().pos;
      Token n = c.expect(Tok::Num, "0, 1, a variable, or '!' variable");
      if (n.num != 0 && n.num != 1) c.fail_here(at, "constants are 0 or 1");
      return Statement::assign(Atom(v.index), AssignSource::constant(n.num == 1));
    }
    default:
      c.fail("expected a statement");
  }
}

bool at_prog_boundary(const Cursor& c) {
  switch (c.kind()) {
    case Tok::KwEnd:
    case Tok::KwElse:
    case Tok::KwOr:
    case Tok::End:
      return true;
    default:
      return false;
  }
}

StatementPtr parse_prog(Cursor& c) {
  std::vector<StatementPtr> parts;
  while (!at_prog_boundary(c)) {
    if (c.accept(Tok::Semi)) continue;  // empty segment
    parts.push_back(parse_single_statement(c));
    if (at_prog_boundary(c)) break;
    c.expect(Tok::Semi, "';' between statements");
  }
  return Statement::seq(std::move(parts));
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Cursor c(text, lex(text));
  Formula f = parse_formula_iff(c);
  c.expect(Tok::End, "end of input");
  return f;
}

InterventionSpec parse_intervention(std::string_view text) {
  Cursor c(text, lex(text));
  if (c.kind() == Tok::End) return InterventionSpec();
  InterventionSpec s = parse_ints(c, Tok::End);
  c.expect(Tok::End, "end of input");
  return s;
}

PLProgram parse_program(std::string_view text) {
  Cursor c(text, lex(text));
  StatementPtr body = parse_prog(c);
  c.expect(Tok::End, "end of input");
  return PLProgram(std::move(body));
}

Tape parse_tape(std::string_view text) {
  Cursor c(text, lex(text));
  Tape t;
  if (c.kind() == Tok::End) return t;
  while (true) {
    Token v = c.expect(Tok::Var, "a variable");
    c.expect(Tok::Eq, "'='");
    std::size_t at = c.peek().pos;
    Token n = c.expect(Tok::Num, "0 or 1");
    if (n.num != 0 && n.num != 1) fail_at(text, at, "tape values are 0 or 1");
    t.set(v.index, n.num == 1);
    if (c.kind() == Tok::End) break;
    c.expect(Tok::Comma, "','");
  }
  c.expect(Tok::End, "end of input");
  return t;
}

}  // namespace causim
