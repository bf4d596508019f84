#include "causim/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace causim {

// ---------------------------------------------------------------------------
// PropFormula
// ---------------------------------------------------------------------------

PropFormula PropFormula::atom(Atom a) {
  return PropFormula(std::make_shared<Node>(Node{Kind::Atom, a, nullptr, nullptr}));
}

PropFormula PropFormula::top() {
  return PropFormula(std::make_shared<Node>(Node{Kind::Top, std::nullopt, nullptr, nullptr}));
}

PropFormula PropFormula::bottom() {
  return PropFormula(std::make_shared<Node>(Node{Kind::Bottom, std::nullopt, nullptr, nullptr}));
}

PropFormula PropFormula::negation(PropFormula f) {
  return PropFormula(std::make_shared<Node>(Node{Kind::Not, std::nullopt, std::move(f.node_), nullptr}));
}

PropFormula PropFormula::conj(PropFormula l, PropFormula r) {
  return PropFormula(std::make_shared<Node>(Node{Kind::And, std::nullopt, std::move(l.node_), std::move(r.node_)}));
}

PropFormula PropFormula::disj(PropFormula l, PropFormula r) {
  return PropFormula(std::make_shared<Node>(Node{Kind::Or, std::nullopt, std::move(l.node_), std::move(r.node_)}));
}

PropFormula PropFormula::literal(Literal l) {
  PropFormula a = atom(l.atom);
  return l.positive ? a : negation(a);
}

Atom PropFormula::atom_value() const {
  assert(kind() == Kind::Atom);
  return *node_->atom;
}

PropFormula PropFormula::operand() const {
  assert(kind() == Kind::Not);
  return PropFormula(node_->a);
}

PropFormula PropFormula::lhs() const {
  assert(kind() == Kind::And || kind() == Kind::Or);
  return PropFormula(node_->a);
}

PropFormula PropFormula::rhs() const {
  assert(kind() == Kind::And || kind() == Kind::Or);
  return PropFormula(node_->b);
}

bool PropFormula::node_equal(const Node& x, const Node& y) {
  if (&x == &y) return true;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Atom:
      return x.atom == y.atom;
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Not:
      return node_equal(*x.a, *y.a);
    case Kind::And:
    case Kind::Or:
      return node_equal(*x.a, *y.a) && node_equal(*x.b, *y.b);
  }
  return false;
}

bool operator==(const PropFormula& a, const PropFormula& b) {
  return PropFormula::node_equal(*a.node_, *b.node_);
}

// ---------------------------------------------------------------------------
// InterventionSpec
// ---------------------------------------------------------------------------

InterventionSpec::InterventionSpec(std::vector<Literal> lits) : lits_(std::move(lits)) {
  for (std::size_t k = 1; k < lits_.size(); ++k) {
    if (lits_[k - 1].atom.index >= lits_[k].atom.index)
      throw std::invalid_argument("intervention literals must have strictly increasing indices");
  }
}

std::optional<InterventionSpec> InterventionSpec::normalized(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  std::vector<Literal> out;
  for (const Literal& l : lits) {
    if (!out.empty() && out.back().atom == l.atom) {
      if (out.back().positive != l.positive) return std::nullopt;
      continue;  // duplicate
    }
    out.push_back(l);
  }
  return InterventionSpec(std::move(out));
}

std::optional<bool> InterventionSpec::polarity_of(AtomIndex i) const {
  for (const Literal& l : lits_)
    if (l.atom.index == i) return l.positive;
  return std::nullopt;
}

PropFormula InterventionSpec::to_prop() const {
  if (lits_.empty()) return PropFormula::top();
  PropFormula acc = PropFormula::literal(lits_.front());
  for (std::size_t k = 1; k < lits_.size(); ++k)
    acc = PropFormula::conj(std::move(acc), PropFormula::literal(lits_[k]));
  return acc;
}

std::optional<InterventionSpec> conjoin(const InterventionSpec& a, const InterventionSpec& b) {
  std::vector<Literal> merged;
  merged.reserve(a.size() + b.size());
  auto ia = a.literals().begin(), ea = a.literals().end();
  auto ib = b.literals().begin(), eb = b.literals().end();
  while (ia != ea && ib != eb) {
    if (ia->atom.index < ib->atom.index) {
      merged.push_back(*ia++);
    } else if (ib->atom.index < ia->atom.index) {
      merged.push_back(*ib++);
    } else {
      if (ia->positive != ib->positive) return std::nullopt;
      merged.push_back(*ia);
      ++ia, ++ib;
    }
  }
  merged.insert(merged.end(), ia, ea);
  merged.insert(merged.end(), ib, eb);
  return InterventionSpec(std::move(merged));
}

bool extends(const InterventionSpec& whole, const InterventionSpec& part) {
  for (const Literal& l : part.literals()) {
    auto p = whole.polarity_of(l.atom.index);
    if (!p || *p != l.positive) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CondAtom / Formula
// ---------------------------------------------------------------------------

bool operator==(const CondAtom& a, const CondAtom& b) {
  return a.modality == b.modality && a.antecedent == b.antecedent && a.consequent == b.consequent;
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<Node>(Node{Kind::Atom, a, std::nullopt, nullptr, nullptr}));
}

Formula Formula::top() {
  return Formula(std::make_shared<Node>(Node{Kind::Top, std::nullopt, std::nullopt, nullptr, nullptr}));
}

Formula Formula::bottom() {
  return Formula(std::make_shared<Node>(Node{Kind::Bottom, std::nullopt, std::nullopt, nullptr, nullptr}));
}

Formula Formula::cond(CondAtom c) {
  return Formula(std::make_shared<Node>(Node{Kind::Cond, std::nullopt, std::move(c), nullptr, nullptr}));
}

Formula Formula::box(InterventionSpec antecedent, PropFormula consequent) {
  return cond(CondAtom{std::move(antecedent), std::move(consequent), Modality::Box});
}

Formula Formula::diamond(InterventionSpec antecedent, PropFormula consequent) {
  return cond(CondAtom{std::move(antecedent), std::move(consequent), Modality::Diamond});
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::Not, std::nullopt, std::nullopt, std::move(f.node_), nullptr}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(
      std::make_shared<Node>(Node{Kind::And, std::nullopt, std::nullopt, std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Or, std::nullopt, std::nullopt, std::move(l.node_), std::move(r.node_)}));
}

Formula Formula::implies(Formula l, Formula r) { return disj(negation(std::move(l)), std::move(r)); }

Formula Formula::iff(Formula l, Formula r) {
  return conj(implies(l, r), implies(std::move(r), std::move(l)));
}

Formula Formula::prop(const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      return atom(p.atom_value());
    case PropFormula::Kind::Top:
      return top();
    case PropFormula::Kind::Bottom:
      return bottom();
    case PropFormula::Kind::Not:
      return negation(prop(p.operand()));
    case PropFormula::Kind::And:
      return conj(prop(p.lhs()), prop(p.rhs()));
    case PropFormula::Kind::Or:
      return disj(prop(p.lhs()), prop(p.rhs()));
  }
  throw std::logic_error("unreachable");
}

Atom Formula::atom_value() const {
  assert(kind() == Kind::Atom);
  return *node_->atom;
}

const CondAtom& Formula::cond_atom() const {
  assert(kind() == Kind::Cond);
  return *node_->cond;
}

Formula Formula::operand() const {
  assert(kind() == Kind::Not);
  return Formula(node_->a);
}

Formula Formula::lhs() const {
  assert(kind() == Kind::And || kind() == Kind::Or);
  return Formula(node_->a);
}

Formula Formula::rhs() const {
  assert(kind() == Kind::And || kind() == Kind::Or);
  return Formula(node_->b);
}

bool Formula::node_equal(const Node& x, const Node& y) {
  if (&x == &y) return true;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Atom:
      return x.atom == y.atom;
    case Kind::Top:
    case Kind::Bottom:
      return true;
    case Kind::Cond:
      return *x.cond == *y.cond;
    case Kind::Not:
      return node_equal(*x.a, *y.a);
    case Kind::And:
    case Kind::Or:
      return node_equal(*x.a, *y.a) && node_equal(*x.b, *y.b);
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) { return Formula::node_equal(*a.node_, *b.node_); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string to_string(const Literal& l) {
  std::string s = l.positive ? "" : "!";
  s += "X" + std::to_string(l.atom.index);
  return s;
}

std::string to_string(const InterventionSpec& s) {
  if (s.is_top()) return "T";
  std::string out;
  for (std::size_t k = 0; k < s.literals().size(); ++k) {
    if (k) out += " & ";
    out += to_string(s.literals()[k]);
  }
  return out;
}

namespace {

// Precedence levels shared by both printers: | = 1, & = 2, unary/atoms = 3.
void print_prop(std::string& out, const PropFormula& p, int parent) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      out += "X" + std::to_string(p.atom_value().index);
      return;
    case PropFormula::Kind::Top:
      out += "T";
      return;
    case PropFormula::Kind::Bottom:
      out += "F";
      return;
    case PropFormula::Kind::Not:
      out += "!";
      print_prop(out, p.operand(), 3);
      return;
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or: {
      int prec = p.kind() == PropFormula::Kind::And ? 2 : 1;
      const char* op = p.kind() == PropFormula::Kind::And ? " & " : " | ";
      bool parens = prec < parent;
      if (parens) out += "(";
      print_prop(out, p.lhs(), prec);
      out += op;
      print_prop(out, p.rhs(), prec + 1);  // left-associative
      if (parens) out += ")";
      return;
    }
  }
}

void print_cond_atom(std::string& out, const CondAtom& c) {
  out += c.modality == Modality::Box ? "[" : "<";
  out += to_string(c.antecedent);
  out += c.modality == Modality::Box ? "] " : "> ";
  // The consequent must reparse as the modal operand: atoms, constants and
  // negation chains stand alone, anything binary gets parentheses.
  bool parens = c.consequent.kind() == PropFormula::Kind::And || c.consequent.kind() == PropFormula::Kind::Or;
  if (parens) out += "(";
  print_prop(out, c.consequent, 0);
  if (parens) out += ")";
}

void print_formula(std::string& out, const Formula& f, int parent) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += "X" + std::to_string(f.atom_value().index);
      return;
    case Formula::Kind::Top:
      out += "T";
      return;
    case Formula::Kind::Bottom:
      out += "F";
      return;
    case Formula::Kind::Cond:
      print_cond_atom(out, f.cond_atom());
      return;
    case Formula::Kind::Not:
      out += "!";
      print_formula(out, f.operand(), 3);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      int prec = f.kind() == Formula::Kind::And ? 2 : 1;
      const char* op = f.kind() == Formula::Kind::And ? " & " : " | ";
      bool parens = prec < parent;
      if (parens) out += "(";
      print_formula(out, f.lhs(), prec);
      out += op;
      print_formula(out, f.rhs(), prec + 1);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const PropFormula& p) {
  std::string out;
  print_prop(out, p, 0);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(out, f, 0);
  return out;
}

// ---------------------------------------------------------------------------
// int_equivalent
// ---------------------------------------------------------------------------

namespace {

void collect_literals(const PropFormula& p, std::vector<Literal>& lits, bool& not_conjunctive,
                      bool& inconsistent) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      lits.push_back(Literal{p.atom_value(), true});
      return;
    case PropFormula::Kind::Top:
      return;
    case PropFormula::Kind::Bottom:
      inconsistent = true;
      return;
    case PropFormula::Kind::Not:
      if (p.operand().kind() == PropFormula::Kind::Atom) {
        lits.push_back(Literal{p.operand().atom_value(), false});
      } else {
        not_conjunctive = true;
      }
      return;
    case PropFormula::Kind::And:
      collect_literals(p.lhs(), lits, not_conjunctive, inconsistent);
      collect_literals(p.rhs(), lits, not_conjunctive, inconsistent);
      return;
    case PropFormula::Kind::Or:
      not_conjunctive = true;
      return;
  }
}

}  // namespace

IntEquivResult int_equivalent(const PropFormula& p) {
  std::vector<Literal> lits;
  bool not_conjunctive = false, inconsistent = false;
  collect_literals(p, lits, not_conjunctive, inconsistent);
  if (not_conjunctive) return {IntEquivStatus::NotConjunctive, std::nullopt};
  if (inconsistent) return {IntEquivStatus::Inconsistent, std::nullopt};
  auto spec = InterventionSpec::normalized(std::move(lits));
  if (!spec) return {IntEquivStatus::Inconsistent, std::nullopt};
  return {IntEquivStatus::Ok, std::move(spec)};
}

// ---------------------------------------------------------------------------
// Negation normal form
// ---------------------------------------------------------------------------

namespace {

PropFormula prop_nnf_signed(const PropFormula& p, bool positive) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      return positive ? p : PropFormula::negation(p);
    case PropFormula::Kind::Top:
      return positive ? PropFormula::top() : PropFormula::bottom();
    case PropFormula::Kind::Bottom:
      return positive ? PropFormula::bottom() : PropFormula::top();
    case PropFormula::Kind::Not:
      return prop_nnf_signed(p.operand(), !positive);
    case PropFormula::Kind::And: {
      PropFormula l = prop_nnf_signed(p.lhs(), positive);
      PropFormula r = prop_nnf_signed(p.rhs(), positive);
      return positive ? PropFormula::conj(std::move(l), std::move(r))
                      : PropFormula::disj(std::move(l), std::move(r));
    }
    case PropFormula::Kind::Or: {
      PropFormula l = prop_nnf_signed(p.lhs(), positive);
      PropFormula r = prop_nnf_signed(p.rhs(), positive);
      return positive ? PropFormula::disj(std::move(l), std::move(r))
                      : PropFormula::conj(std::move(l), std::move(r));
    }
  }
  throw std::logic_error("unreachable");
}

Formula nnf_signed(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return positive ? f : Formula::negation(f);
    case Formula::Kind::Top:
      return positive ? Formula::top() : Formula::bottom();
    case Formula::Kind::Bottom:
      return positive ? Formula::bottom() : Formula::top();
    case Formula::Kind::Cond: {
      const CondAtom& c = f.cond_atom();
      // !([a]b) = <a>!b and !(<a>b) = [a]!b; the consequent is normalized
      // either way so negations sit on atoms globally.
      Modality m = c.modality;
      if (!positive) m = m == Modality::Box ? Modality::Diamond : Modality::Box;
      return Formula::cond(CondAtom{c.antecedent, prop_nnf_signed(c.consequent, positive), m});
    }
    case Formula::Kind::Not:
      return nnf_signed(f.operand(), !positive);
    case Formula::Kind::And: {
      Formula l = nnf_signed(f.lhs(), positive);
      Formula r = nnf_signed(f.rhs(), positive);
      return positive ? Formula::conj(std::move(l), std::move(r)) : Formula::disj(std::move(l), std::move(r));
    }
    case Formula::Kind::Or: {
      Formula l = nnf_signed(f.lhs(), positive);
      Formula r = nnf_signed(f.rhs(), positive);
      return positive ? Formula::disj(std::move(l), std::move(r)) : Formula::conj(std::move(l), std::move(r));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PropFormula prop_nnf(const PropFormula& p) { return prop_nnf_signed(p, true); }

Formula to_nnf(const Formula& f) { return nnf_signed(f, true); }

// ---------------------------------------------------------------------------
// Evaluation and measures
// ---------------------------------------------------------------------------

bool prop_eval(const Tape& t, const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      return t.get(p.atom_value().index);
    case PropFormula::Kind::Top:
      return true;
    case PropFormula::Kind::Bottom:
      return false;
    case PropFormula::Kind::Not:
      return !prop_eval(t, p.operand());
    case PropFormula::Kind::And:
      return prop_eval(t, p.lhs()) && prop_eval(t, p.rhs());
    case PropFormula::Kind::Or:
      return prop_eval(t, p.lhs()) || prop_eval(t, p.rhs());
  }
  throw std::logic_error("unreachable");
}

namespace {

std::int64_t prop_size(const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
    case PropFormula::Kind::Top:
    case PropFormula::Kind::Bottom:
      return 1;
    case PropFormula::Kind::Not:
      return 1 + prop_size(p.operand());
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or:
      return 1 + prop_size(p.lhs()) + prop_size(p.rhs());
  }
  return 0;
}

AtomIndex prop_max_index(const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      return p.atom_value().index;
    case PropFormula::Kind::Top:
    case PropFormula::Kind::Bottom:
      return 0;
    case PropFormula::Kind::Not:
      return prop_max_index(p.operand());
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or:
      return std::max(prop_max_index(p.lhs()), prop_max_index(p.rhs()));
  }
  return 0;
}

}  // namespace

std::int64_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return 1;
    case Formula::Kind::Cond:
      return 1 + static_cast<std::int64_t>(f.cond_atom().antecedent.size()) +
             prop_size(f.cond_atom().consequent);
    case Formula::Kind::Not:
      return 1 + formula_size(f.operand());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
  }
  return 0;
}

AtomIndex max_atom_index(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f.atom_value().index;
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return 0;
    case Formula::Kind::Cond:
      return std::max(f.cond_atom().antecedent.max_index(), prop_max_index(f.cond_atom().consequent));
    case Formula::Kind::Not:
      return max_atom_index(f.operand());
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return std::max(max_atom_index(f.lhs()), max_atom_index(f.rhs()));
  }
  return 0;
}

AtomIndex tape_bound(const Formula& f) { return std::max<AtomIndex>(1, max_atom_index(f)); }

namespace {

void collect_antecedents(const Formula& f, std::set<InterventionSpec>& out) {
  switch (f.kind()) {
    case Formula::Kind::Cond:
      out.insert(f.cond_atom().antecedent);
      return;
    case Formula::Kind::Not:
      collect_antecedents(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_antecedents(f.lhs(), out);
      collect_antecedents(f.rhs(), out);
      return;
    default:
      return;
  }
}

}  // namespace

std::set<InterventionSpec> antecedents_of(const Formula& f) {
  std::set<InterventionSpec> out;
  collect_antecedents(f, out);
  return out;
}

}  // namespace causim
