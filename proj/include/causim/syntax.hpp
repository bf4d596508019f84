#pragma once

// ASTs, parser, printer and canonicalization for the query languages:
//
//   - propositional formulas over indexed bits X1, X2, ...
//   - intervention clauses (ordered, duplicate-free literal conjunctions)
//   - conditional atoms [a]b and <a>b
//   - the full language: Boolean combinations of bit atoms and conditionals
//
// All values are immutable after construction and safe to share between
// threads; every operation here is a pure function.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "causim/tape.hpp"

namespace causim {

// Tape variable X_i. Indices start at 1.
struct Atom {
  AtomIndex index;

  explicit Atom(AtomIndex i) : index(i) {
    if (i < 1) throw std::invalid_argument("atom index must be >= 1");
  }
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive;
  auto operator<=>(const Literal&) const = default;
};

inline Literal pos(AtomIndex i) { return Literal{Atom(i), true}; }
inline Literal neg(AtomIndex i) { return Literal{Atom(i), false}; }

// ---------------------------------------------------------------------------
// Propositional formulas
// ---------------------------------------------------------------------------

class PropFormula {
 public:
  enum class Kind { Atom, Top, Bottom, Not, And, Or };

  static PropFormula atom(Atom a);
  static PropFormula atom(AtomIndex i) { return atom(Atom(i)); }
  static PropFormula top();
  static PropFormula bottom();
  static PropFormula negation(PropFormula f);
  static PropFormula conj(PropFormula l, PropFormula r);
  static PropFormula disj(PropFormula l, PropFormula r);
  static PropFormula literal(Literal l);

  Kind kind() const { return node_->kind; }
  Atom atom_value() const;       // Kind::Atom
  PropFormula operand() const;   // Kind::Not
  PropFormula lhs() const;       // Kind::And / Kind::Or
  PropFormula rhs() const;

  friend bool operator==(const PropFormula& a, const PropFormula& b);
  friend bool operator!=(const PropFormula& a, const PropFormula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::optional<Atom> atom;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit PropFormula(NodePtr n) : node_(std::move(n)) {}
  static bool node_equal(const Node& x, const Node& y);

  NodePtr node_;
};

// ---------------------------------------------------------------------------
// Intervention clauses
// ---------------------------------------------------------------------------

// A consistent conjunction of literals with strictly increasing indices.
// The empty clause is the trivial intervention T.
class InterventionSpec {
 public:
  InterventionSpec() = default;

  // Literals must already be in strictly increasing index order.
  explicit InterventionSpec(std::vector<Literal> lits);

  // Sorts and deduplicates; nullopt when some index occurs with both
  // polarities.
  static std::optional<InterventionSpec> normalized(std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  bool is_top() const { return lits_.empty(); }
  std::size_t size() const { return lits_.size(); }
  std::optional<bool> polarity_of(AtomIndex i) const;
  bool mentions(AtomIndex i) const { return polarity_of(i).has_value(); }
  AtomIndex max_index() const { return lits_.empty() ? 0 : lits_.back().atom.index; }

  PropFormula to_prop() const;

  auto operator<=>(const InterventionSpec&) const = default;

 private:
  std::vector<Literal> lits_;
};

// Conjunction of two clauses; nullopt when they disagree on some variable.
std::optional<InterventionSpec> conjoin(const InterventionSpec& a, const InterventionSpec& b);

// True when every literal of `part` also occurs in `whole`.
bool extends(const InterventionSpec& whole, const InterventionSpec& part);

// ---------------------------------------------------------------------------
// Conditionals and the full language
// ---------------------------------------------------------------------------

enum class Modality { Box, Diamond };

// [a]b ("every halting run under the a-intervention satisfies b") or its
// dual <a>b. The diamond is stored as a first-class modality so downstream
// passes can dispatch on it directly.
struct CondAtom {
  InterventionSpec antecedent;
  PropFormula consequent;
  Modality modality;

  friend bool operator==(const CondAtom& a, const CondAtom& b);
  friend bool operator!=(const CondAtom& a, const CondAtom& b) { return !(a == b); }
};

// Boolean combinations of bit atoms, T/F, and conditional atoms. Conditional
// atoms never nest: antecedents are InterventionSpec values and consequents
// are propositional, so nesting is unrepresentable by construction.
class Formula {
 public:
  enum class Kind { Atom, Top, Bottom, Cond, Not, And, Or };

  static Formula atom(Atom a);
  static Formula atom(AtomIndex i) { return atom(Atom(i)); }
  static Formula top();
  static Formula bottom();
  static Formula cond(CondAtom c);
  static Formula box(InterventionSpec antecedent, PropFormula consequent);
  static Formula diamond(InterventionSpec antecedent, PropFormula consequent);
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);  // sugar: !l | r
  static Formula iff(Formula l, Formula r);      // sugar: (l -> r) & (r -> l)

  // Decomposes a propositional formula into formula-level connectives over
  // atomic leaves, so printing and reparsing round-trips structurally.
  static Formula prop(const PropFormula& p);

  Kind kind() const { return node_->kind; }
  Atom atom_value() const;          // Kind::Atom
  const CondAtom& cond_atom() const;  // Kind::Cond
  Formula operand() const;          // Kind::Not
  Formula lhs() const;              // Kind::And / Kind::Or
  Formula rhs() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::optional<Atom> atom;
    std::optional<CondAtom> cond;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr n) : node_(std::move(n)) {}
  static bool node_equal(const Node& x, const Node& y);

  NodePtr node_;
};

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position, int line, int column);

  std::size_t position;
  int line;
  int column;
};

// Grammar (ASCII): atoms X1, X2, ...; `!` negation; `&` conjunction; `|`
// disjunction; parentheses; `T`/`F`; `->` and `<->` as right-associative
// sugar; `[` ints `]` and `<` ints `>` where ints is `T` or a `&`-joined
// literal list with strictly increasing indices. Precedence: `!` > `&` > `|`
// > `->` > `<->`; modal operators bind tighter than binary connectives and
// apply to the immediately following (possibly parenthesized) propositional
// formula.
Formula parse_formula(std::string_view text);

// Parses an intervention clause; "" and "T" denote the empty intervention.
InterventionSpec parse_intervention(std::string_view text);

std::string to_string(const Literal& l);
std::string to_string(const InterventionSpec& s);
std::string to_string(const PropFormula& p);
std::string to_string(const Formula& f);

// ---------------------------------------------------------------------------
// Canonicalization and evaluation
// ---------------------------------------------------------------------------

enum class IntEquivStatus { Ok, NotConjunctive, Inconsistent };

struct IntEquivResult {
  IntEquivStatus status;
  std::optional<InterventionSpec> spec;  // engaged iff status == Ok
};

// Intervention-clause equivalent of a propositional formula: sorts and
// deduplicates a pure literal conjunction. NotConjunctive when the shape is
// wrong (some Or, or negation of a non-atom); Inconsistent when some variable
// occurs with both polarities (F counts as inconsistent).
IntEquivResult int_equivalent(const PropFormula& p);

// Negation normal form. Negations end up only on atoms; a negated box
// becomes a diamond of the negated consequent and vice versa.
Formula to_nnf(const Formula& f);
PropFormula prop_nnf(const PropFormula& p);

bool prop_eval(const Tape& t, const PropFormula& p);

// Size (total AST node count, antecedent literals and consequent nodes
// included) and index bounds, shared by the fragment checks.
std::int64_t formula_size(const Formula& f);
AtomIndex max_atom_index(const Formula& f);

// Smallest tape-variable bound usable for probe synthesis: max(1, max index).
AtomIndex tape_bound(const Formula& f);

// All antecedents of conditional atoms occurring in f.
std::set<InterventionSpec> antecedents_of(const Formula& f);

}  // namespace causim
