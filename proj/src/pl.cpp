#include "causim/pl.hpp"

#include <algorithm>
#include <cassert>

namespace causim {

std::string to_string(Dialect d) {
  switch (d) {
    case Dialect::Full: return "full";
    case Dialect::Det: return "det";
    case Dialect::Halting: return "halting";
    case Dialect::DetHalting: return "det-halting";
  }
  return "?";
}

std::optional<Dialect> dialect_from_string(std::string_view s) {
  if (s == "full") return Dialect::Full;
  if (s == "det") return Dialect::Det;
  if (s == "halting") return Dialect::Halting;
  if (s == "det-halting") return Dialect::DetHalting;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Condition
// ---------------------------------------------------------------------------

ConditionPtr Condition::var_eq_const(Atom v, bool b) {
  auto c = std::make_shared<Condition>();
  c->kind = Kind::VarEqConst;
  c->lhs = v;
  c->bit = b;
  return c;
}

ConditionPtr Condition::var_eq_var(Atom a, Atom b) {
  auto c = std::make_shared<Condition>();
  c->kind = Kind::VarEqVar;
  c->lhs = a;
  c->rhs = b;
  return c;
}

ConditionPtr Condition::var_neq_var(Atom a, Atom b) {
  auto c = std::make_shared<Condition>();
  c->kind = Kind::VarNeqVar;
  c->lhs = a;
  c->rhs = b;
  return c;
}

ConditionPtr Condition::conj(ConditionPtr a, ConditionPtr b) {
  auto c = std::make_shared<Condition>();
  c->kind = Kind::Conj;
  c->left = std::move(a);
  c->right = std::move(b);
  return c;
}

bool equal(const Condition& a, const Condition& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Condition::Kind::VarEqConst:
      return a.lhs == b.lhs && a.bit == b.bit;
    case Condition::Kind::VarEqVar:
    case Condition::Kind::VarNeqVar:
      return a.lhs == b.lhs && a.rhs == b.rhs;
    case Condition::Kind::Conj:
      return equal(*a.left, *b.left) && equal(*a.right, *b.right);
  }
  return false;
}

bool eval_condition(const Condition& c, const Tape& t) {
  switch (c.kind) {
    case Condition::Kind::VarEqConst:
      return t.get(c.lhs->index) == c.bit;
    case Condition::Kind::VarEqVar:
      return t.get(c.lhs->index) == t.get(c.rhs->index);
    case Condition::Kind::VarNeqVar:
      return t.get(c.lhs->index) != t.get(c.rhs->index);
    case Condition::Kind::Conj:
      return eval_condition(*c.left, t) && eval_condition(*c.right, t);
  }
  return false;
}

std::vector<ConditionPtr> conjuncts(const ConditionPtr& c) {
  std::vector<ConditionPtr> out;
  if (!c) return out;
  if (c->kind != Condition::Kind::Conj) {
    out.push_back(c);
    return out;
  }
  auto l = conjuncts(c->left);
  auto r = conjuncts(c->right);
  out.insert(out.end(), l.begin(), l.end());
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

// ---------------------------------------------------------------------------
// Statement
// ---------------------------------------------------------------------------

AssignSource AssignSource::constant(bool b) {
  AssignSource s;
  s.kind = Kind::Const;
  s.bit = b;
  return s;
}

AssignSource AssignSource::copy_of(Atom a) {
  AssignSource s;
  s.kind = Kind::Var;
  s.var = a;
  return s;
}

AssignSource AssignSource::negation_of(Atom a) {
  AssignSource s;
  s.kind = Kind::NegVar;
  s.var = a;
  return s;
}

bool operator==(const AssignSource& a, const AssignSource& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == AssignSource::Kind::Const) return a.bit == b.bit;
  return a.var == b.var;
}

StatementPtr Statement::empty() {
  auto s = std::make_shared<Statement>();
  s->kind = Kind::Empty;
  return s;
}

StatementPtr Statement::assign(Atom target, AssignSource source) {
  auto s = std::make_shared<Statement>();
  s->kind = Kind::Assign;
  s->target = target;
  s->source = source;
  return s;
}

StatementPtr Statement::seq(std::vector<StatementPtr> parts) {
  std::vector<StatementPtr> flat;
  for (auto& p : parts) {
    if (!p || p->kind == Kind::Empty) continue;
    if (p->kind == Kind::Seq) {
      flat.insert(flat.end(), p->stmts.begin(), p->stmts.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat.front();
  auto s = std::make_shared<Statement>();
  s->kind = Kind::Seq;
  s->stmts = std::move(flat);
  return s;
}

StatementPtr Statement::loop() {
  auto s = std::make_shared<Statement>();
  s->kind = Kind::Loop;
  return s;
}

StatementPtr Statement::if_else(ConditionPtr cond, StatementPtr then_branch, StatementPtr else_branch) {
  auto s = std::make_shared<Statement>();
  s->kind = Kind::If;
  s->cond = std::move(cond);
  s->then_branch = then_branch ? std::move(then_branch) : empty();
  s->else_branch = else_branch ? std::move(else_branch) : empty();
  return s;
}

StatementPtr Statement::choose(std::vector<StatementPtr> branches) {
  for (auto& b : branches)
    if (!b) b = empty();
  if (branches.empty()) return empty();
  if (branches.size() == 1) return branches.front();
  auto s = std::make_shared<Statement>();
  s->kind = Kind::Choose;
  s->branches = std::move(branches);
  return s;
}

bool equal(const Statement& a, const Statement& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Statement::Kind::Empty:
    case Statement::Kind::Loop:
      return true;
    case Statement::Kind::Assign:
      return a.target == b.target && a.source == b.source;
    case Statement::Kind::Seq: {
      if (a.stmts.size() != b.stmts.size()) return false;
      for (std::size_t k = 0; k < a.stmts.size(); ++k)
        if (!equal(*a.stmts[k], *b.stmts[k])) return false;
      return true;
    }
    case Statement::Kind::If:
      return equal(*a.cond, *b.cond) && equal(*a.then_branch, *b.then_branch) &&
             equal(*a.else_branch, *b.else_branch);
    case Statement::Kind::Choose: {
      if (a.branches.size() != b.branches.size()) return false;
      for (std::size_t k = 0; k < a.branches.size(); ++k)
        if (!equal(*a.branches[k], *b.branches[k])) return false;
      return true;
    }
  }
  return false;
}

std::vector<StatementPtr> flatten(const StatementPtr& s) {
  if (!s || s->kind == Statement::Kind::Empty) return {};
  if (s->kind == Statement::Kind::Seq) return s->stmts;
  return {s};
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string var_name(const Atom& a) { return "X" + std::to_string(a.index); }

void print_cond(std::string& out, const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::VarEqConst:
      out += var_name(*c.lhs) + " = " + (c.bit ? "1" : "0");
      return;
    case Condition::Kind::VarEqVar:
      out += var_name(*c.lhs) + " = " + var_name(*c.rhs);
      return;
    case Condition::Kind::VarNeqVar:
      out += var_name(*c.lhs) + " != " + var_name(*c.rhs);
      return;
    case Condition::Kind::Conj:
      print_cond(out, *c.left);
      out += " & ";
      print_cond(out, *c.right);
      return;
  }
}

void print_stmt(std::string& out, const Statement& s) {
  switch (s.kind) {
    case Statement::Kind::Empty:
      return;
    case Statement::Kind::Assign:
      out += var_name(*s.target) + " := ";
      switch (s.source.kind) {
        case AssignSource::Kind::Const: out += s.source.bit ? "1" : "0"; break;
        case AssignSource::Kind::Var: out += var_name(*s.source.var); break;
        case AssignSource::Kind::NegVar: out += "!" + var_name(*s.source.var); break;
      }
      return;
    case Statement::Kind::Seq:
      for (std::size_t k = 0; k < s.stmts.size(); ++k) {
        if (k) out += " ; ";
        print_stmt(out, *s.stmts[k]);
      }
      return;
    case Statement::Kind::Loop:
      out += "loop";
      return;
    case Statement::Kind::If:
      out += "if ";
      print_cond(out, *s.cond);
      out += " then";
      if (s.then_branch->kind != Statement::Kind::Empty) {
        out += " ";
        print_stmt(out, *s.then_branch);
      }
      out += " else";
      if (s.else_branch->kind != Statement::Kind::Empty) {
        out += " ";
        print_stmt(out, *s.else_branch);
      }
      out += " end";
      return;
    case Statement::Kind::Choose:
      out += "choose";
      for (std::size_t k = 0; k < s.branches.size(); ++k) {
        if (k) out += " or";
        if (s.branches[k]->kind != Statement::Kind::Empty) {
          out += " ";
          print_stmt(out, *s.branches[k]);
        }
      }
      out += " end";
      return;
  }
}

}  // namespace

std::string to_string(const Condition& c) {
  std::string out;
  print_cond(out, c);
  return out;
}

std::string to_string(const Statement& s) {
  std::string out;
  print_stmt(out, s);
  return out;
}

std::string to_string(const PLProgram& p) { return to_string(*p.body); }

// ---------------------------------------------------------------------------
// Dialect validation
// ---------------------------------------------------------------------------

namespace {

void scan_violations(const Statement& s, bool no_choose, bool no_loop, const std::string& path,
                     std::vector<DialectViolation>& out) {
  switch (s.kind) {
    case Statement::Kind::Empty:
    case Statement::Kind::Assign:
      return;
    case Statement::Kind::Loop:
      if (no_loop) out.push_back({path, "loop"});
      return;
    case Statement::Kind::Seq:
      for (std::size_t k = 0; k < s.stmts.size(); ++k)
        scan_violations(*s.stmts[k], no_choose, no_loop, path + "[" + std::to_string(k) + "]", out);
      return;
    case Statement::Kind::If:
      scan_violations(*s.then_branch, no_choose, no_loop, path + ".then", out);
      scan_violations(*s.else_branch, no_choose, no_loop, path + ".else", out);
      return;
    case Statement::Kind::Choose:
      if (no_choose) out.push_back({path, "choose"});
      for (std::size_t k = 0; k < s.branches.size(); ++k)
        scan_violations(*s.branches[k], no_choose, no_loop, path + ".branch[" + std::to_string(k) + "]", out);
      return;
  }
}

}  // namespace

std::vector<DialectViolation> validate_dialect(const PLProgram& p, Dialect d) {
  bool no_choose = d == Dialect::Det || d == Dialect::DetHalting;
  bool no_loop = d == Dialect::Halting || d == Dialect::DetHalting;
  std::vector<DialectViolation> out;
  scan_violations(*p.body, no_choose, no_loop, "body", out);
  return out;
}

bool conforms(const PLProgram& p, Dialect d) { return validate_dialect(p, d).empty(); }

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

namespace {

// Token count of the canonical printed form, computed on the AST (one token
// per variable, constant, operator, keyword, or separator).
std::int64_t cond_tokens(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::VarEqConst:
    case Condition::Kind::VarEqVar:
    case Condition::Kind::VarNeqVar:
      return 3;
    case Condition::Kind::Conj:
      return cond_tokens(*c.left) + 1 + cond_tokens(*c.right);
  }
  return 0;
}

std::int64_t stmt_tokens(const Statement& s) {
  switch (s.kind) {
    case Statement::Kind::Empty:
      return 0;
    case Statement::Kind::Assign:
      return s.source.kind == AssignSource::Kind::NegVar ? 4 : 3;
    case Statement::Kind::Seq: {
      std::int64_t n = static_cast<std::int64_t>(s.stmts.size()) - 1;  // separators
      for (const auto& part : s.stmts) n += stmt_tokens(*part);
      return n;
    }
    case Statement::Kind::Loop:
      return 1;
    case Statement::Kind::If:
      return 4 + cond_tokens(*s.cond) + stmt_tokens(*s.then_branch) + stmt_tokens(*s.else_branch);
    case Statement::Kind::Choose: {
      std::int64_t n = 2 + static_cast<std::int64_t>(s.branches.size()) - 1;  // choose/end + or's
      for (const auto& b : s.branches) n += stmt_tokens(*b);
      return n;
    }
  }
  return 0;
}

void max_index_cond(const Condition& c, AtomIndex& m) {
  switch (c.kind) {
    case Condition::Kind::VarEqConst:
      m = std::max(m, c.lhs->index);
      return;
    case Condition::Kind::VarEqVar:
    case Condition::Kind::VarNeqVar:
      m = std::max({m, c.lhs->index, c.rhs->index});
      return;
    case Condition::Kind::Conj:
      max_index_cond(*c.left, m);
      max_index_cond(*c.right, m);
      return;
  }
}

void max_index_stmt(const Statement& s, AtomIndex& m) {
  switch (s.kind) {
    case Statement::Kind::Empty:
    case Statement::Kind::Loop:
      return;
    case Statement::Kind::Assign:
      m = std::max(m, s.target->index);
      if (s.source.var) m = std::max(m, s.source.var->index);
      return;
    case Statement::Kind::Seq:
      for (const auto& part : s.stmts) max_index_stmt(*part, m);
      return;
    case Statement::Kind::If:
      max_index_cond(*s.cond, m);
      max_index_stmt(*s.then_branch, m);
      max_index_stmt(*s.else_branch, m);
      return;
    case Statement::Kind::Choose:
      for (const auto& b : s.branches) max_index_stmt(*b, m);
      return;
  }
}

}  // namespace

ProgramMetrics program_metrics(const PLProgram& p) {
  AtomIndex m = 0;
  max_index_stmt(*p.body, m);
  return ProgramMetrics{stmt_tokens(*p.body), m};
}

}  // namespace causim
