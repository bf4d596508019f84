#pragma once

// The simulation language: bit assignments, conditionals over bit tests,
// nondeterministic `choose`, and the unconditional infinite `loop`.
//
// Concrete syntax:
//   prog    ::= '' | assign | prog ';' prog | 'loop' | 'skip'
//             | 'if' cond 'then' prog 'else' prog 'end'
//             | 'choose' prog ('or' prog)* 'end'
//   assign  ::= var ':=' ('0' | '1' | var | '!' var)
//   cond    ::= var '=' ('0'|'1') | var '=' var | var '!=' var | cond '&' cond
//
// `skip` is accepted as surface syntax for the empty program; the AST stores
// Empty and the canonical printer renders it as nothing.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causim/syntax.hpp"

namespace causim {

// Program classes: Det forbids choose, Halting forbids loop, DetHalting both.
enum class Dialect { Full, Det, Halting, DetHalting };

std::string to_string(Dialect d);
std::optional<Dialect> dialect_from_string(std::string_view s);

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

struct Condition {
  enum class Kind { VarEqConst, VarEqVar, VarNeqVar, Conj };

  Kind kind;
  std::optional<Atom> lhs;  // VarEqConst / VarEqVar / VarNeqVar
  bool bit = false;         // VarEqConst
  std::optional<Atom> rhs;  // VarEqVar / VarNeqVar
  ConditionPtr left, right;  // Conj

  static ConditionPtr var_eq_const(Atom v, bool b);
  static ConditionPtr var_eq_var(Atom a, Atom b);
  static ConditionPtr var_neq_var(Atom a, Atom b);
  static ConditionPtr conj(ConditionPtr a, ConditionPtr b);
};

bool equal(const Condition& a, const Condition& b);

// Conjuncts of a (possibly nested) conjunction, left to right.
std::vector<ConditionPtr> conjuncts(const ConditionPtr& c);

bool eval_condition(const Condition& c, const Tape& t);

struct AssignSource {
  enum class Kind { Const, Var, NegVar };

  Kind kind = Kind::Const;
  bool bit = false;          // Const
  std::optional<Atom> var;   // Var / NegVar

  static AssignSource constant(bool b);
  static AssignSource copy_of(Atom a);
  static AssignSource negation_of(Atom a);

  friend bool operator==(const AssignSource& a, const AssignSource& b);
};

struct Statement;
using StatementPtr = std::shared_ptr<const Statement>;

struct Statement {
  enum class Kind { Empty, Assign, Seq, Loop, If, Choose };

  Kind kind;

  // Assign
  std::optional<Atom> target;
  AssignSource source{};

  // Seq: flattened; members are never Empty or Seq; always >= 2 of them.
  std::vector<StatementPtr> stmts;

  // If
  ConditionPtr cond;
  StatementPtr then_branch, else_branch;

  // Choose: >= 2 branches, order preserved (the semantics treats them as a
  // set; the order only fixes printing and path enumeration).
  std::vector<StatementPtr> branches;

  static StatementPtr empty();
  static StatementPtr assign(Atom target, AssignSource source);
  // Flattens nested sequences and drops empties.
  static StatementPtr seq(std::vector<StatementPtr> parts);
  static StatementPtr loop();
  static StatementPtr if_else(ConditionPtr cond, StatementPtr then_branch, StatementPtr else_branch);
  // A single-branch choose collapses to its branch.
  static StatementPtr choose(std::vector<StatementPtr> branches);
};

bool equal(const Statement& a, const Statement& b);

// Statement list view: Seq -> members, Empty -> {}, anything else -> {s}.
std::vector<StatementPtr> flatten(const StatementPtr& s);

struct PLProgram {
  StatementPtr body;

  PLProgram() : body(Statement::empty()) {}
  explicit PLProgram(StatementPtr b) : body(std::move(b)) {}

  friend bool operator==(const PLProgram& a, const PLProgram& b) { return equal(*a.body, *b.body); }
  friend bool operator!=(const PLProgram& a, const PLProgram& b) { return !(a == b); }
};

PLProgram parse_program(std::string_view text);

std::string to_string(const Condition& c);
std::string to_string(const Statement& s);
std::string to_string(const PLProgram& p);

struct DialectViolation {
  std::string path;       // e.g. "body[2].then.branch[0]"
  std::string construct;  // "choose" or "loop"
};

// Empty result means the program belongs to the dialect.
std::vector<DialectViolation> validate_dialect(const PLProgram& p, Dialect d);
bool conforms(const PLProgram& p, Dialect d);

struct ProgramMetrics {
  std::int64_t length;  // token count of the canonical printed form
  AtomIndex max_index;  // largest variable index occurring; 0 if none
};

ProgramMetrics program_metrics(const PLProgram& p);

}  // namespace causim
