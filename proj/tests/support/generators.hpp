#pragma once

// Seeded random generators for formulas, programs, tapes, and interventions,
// plus builders for the rule instances the soundness suites exercise.
// Everything is driven by an explicit mt19937_64 so failures replay exactly.

#include <random>
#include <vector>

#include "causim/interpreter.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"

namespace causim::testgen {

using Rng = std::mt19937_64;

inline int roll(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng) { return roll(rng, 0, 1) == 1; }
inline AtomIndex pick_index(Rng& rng, AtomIndex max_atom) {
  return std::uniform_int_distribution<AtomIndex>(1, max_atom)(rng);
}

inline InterventionSpec random_intervention(Rng& rng, AtomIndex max_atom, int max_len) {
  int len = roll(rng, 0, max_len);
  std::vector<Literal> lits;
  for (AtomIndex i = 1; i <= max_atom && static_cast<int>(lits.size()) < len; ++i)
    if (coin(rng)) lits.push_back(Literal{Atom(i), coin(rng)});
  return InterventionSpec(std::move(lits));
}

inline Tape random_tape(Rng& rng, AtomIndex max_atom) {
  Tape t;
  for (AtomIndex i = 1; i <= max_atom; ++i)
    if (coin(rng)) t.set(i, true);
  return t;
}

inline PropFormula random_prop(Rng& rng, AtomIndex max_atom, int depth) {
  if (depth <= 0 || roll(rng, 0, 3) == 0) {
    int r = roll(rng, 0, 9);
    if (r == 0) return PropFormula::top();
    if (r == 1) return PropFormula::bottom();
    PropFormula a = PropFormula::atom(pick_index(rng, max_atom));
    return coin(rng) ? a : PropFormula::negation(a);
  }
  switch (roll(rng, 0, 2)) {
    case 0:
      return PropFormula::negation(random_prop(rng, max_atom, depth - 1));
    case 1:
      return PropFormula::conj(random_prop(rng, max_atom, depth - 1), random_prop(rng, max_atom, depth - 1));
    default:
      return PropFormula::disj(random_prop(rng, max_atom, depth - 1), random_prop(rng, max_atom, depth - 1));
  }
}

struct FormulaGenOptions {
  AtomIndex max_atom = 4;
  int connective_budget = 6;
  int max_cond_atoms = 1000;
  int consequent_depth = 2;
};

namespace detail {

inline Formula gen_formula(Rng& rng, const FormulaGenOptions& g, int& connectives, int& conds, int depth) {
  if (connectives > 0 && depth < 10 && roll(rng, 0, 9) < 6) {
    --connectives;
    switch (roll(rng, 0, 3)) {
      case 0:
        return Formula::negation(gen_formula(rng, g, connectives, conds, depth + 1));
      case 1:
        return Formula::conj(gen_formula(rng, g, connectives, conds, depth + 1),
                             gen_formula(rng, g, connectives, conds, depth + 1));
      default:
        return Formula::disj(gen_formula(rng, g, connectives, conds, depth + 1),
                             gen_formula(rng, g, connectives, conds, depth + 1));
    }
  }
  int r = roll(rng, 0, 9);
  if (conds > 0 && r < 5) {
    --conds;
    InterventionSpec antecedent = random_intervention(rng, g.max_atom, 2);
    PropFormula consequent = random_prop(rng, g.max_atom, g.consequent_depth);
    return coin(rng) ? Formula::box(std::move(antecedent), std::move(consequent))
                     : Formula::diamond(std::move(antecedent), std::move(consequent));
  }
  if (r == 5) return coin(rng) ? Formula::top() : Formula::bottom();
  return Formula::atom(pick_index(rng, g.max_atom));
}

}  // namespace detail

inline Formula random_formula(Rng& rng, const FormulaGenOptions& g = {}) {
  int connectives = g.connective_budget;
  int conds = g.max_cond_atoms;
  return detail::gen_formula(rng, g, connectives, conds, 0);
}

inline ConditionPtr random_condition(Rng& rng, AtomIndex max_atom) {
  auto atom_cond = [&] {
    Atom a(pick_index(rng, max_atom));
    switch (roll(rng, 0, 2)) {
      case 0:
        return Condition::var_eq_const(a, coin(rng));
      case 1:
        return Condition::var_eq_var(a, Atom(pick_index(rng, max_atom)));
      default:
        return Condition::var_neq_var(a, Atom(pick_index(rng, max_atom)));
    }
  };
  ConditionPtr c = atom_cond();
  if (coin(rng)) c = Condition::conj(std::move(c), atom_cond());
  return c;
}

inline StatementPtr random_statement(Rng& rng, int depth, AtomIndex max_atom, bool allow_choose,
                                     bool allow_loop) {
  auto assign = [&] {
    Atom target(pick_index(rng, max_atom));
    switch (roll(rng, 0, 3)) {
      case 0:
        return Statement::assign(target, AssignSource::constant(coin(rng)));
      case 1:
        return Statement::assign(target, AssignSource::constant(coin(rng)));
      case 2:
        return Statement::assign(target, AssignSource::copy_of(Atom(pick_index(rng, max_atom))));
      default:
        return Statement::assign(target, AssignSource::negation_of(Atom(pick_index(rng, max_atom))));
    }
  };
  if (depth <= 0) {
    int r = roll(rng, 0, 9);
    if (r == 0) return Statement::empty();
    if (r == 1 && allow_loop) return Statement::loop();
    return assign();
  }
  int r = roll(rng, 0, 11);
  if (r <= 3) return assign();
  if (r <= 6) {
    std::vector<StatementPtr> parts;
    int count = roll(rng, 2, 3);
    for (int k = 0; k < count; ++k)
      parts.push_back(random_statement(rng, depth - 1, max_atom, allow_choose, allow_loop));
    return Statement::seq(std::move(parts));
  }
  if (r <= 8)
    return Statement::if_else(random_condition(rng, max_atom),
                              random_statement(rng, depth - 1, max_atom, allow_choose, allow_loop),
                              random_statement(rng, depth - 1, max_atom, allow_choose, allow_loop));
  if (r == 9 && allow_loop) return Statement::loop();
  if (allow_choose) {
    std::vector<StatementPtr> branches;
    int count = roll(rng, 2, 3);
    for (int k = 0; k < count; ++k)
      branches.push_back(random_statement(rng, depth - 1, max_atom, allow_choose, allow_loop));
    return Statement::choose(std::move(branches));
  }
  return assign();
}

inline PLProgram random_program(Rng& rng, int depth, AtomIndex max_atom, bool allow_choose, bool allow_loop) {
  return PLProgram(random_statement(rng, depth, max_atom, allow_choose, allow_loop));
}

// --- rule instances --------------------------------------------------------

// [a] a
inline Formula rule_identity(const InterventionSpec& a) { return Formula::box(a, a.to_prop()); }

// [a](b -> c) -> ([a]b -> [a]c)
inline Formula rule_distribution(const InterventionSpec& a, const PropFormula& b, const PropFormula& c) {
  PropFormula impl = PropFormula::disj(PropFormula::negation(b), c);
  return Formula::implies(Formula::box(a, impl), Formula::implies(Formula::box(a, b), Formula::box(a, c)));
}

// <a>b -> [a]b  (sound on deterministic programs)
inline Formula rule_unique_outcome(const InterventionSpec& a, const PropFormula& b) {
  return Formula::implies(Formula::diamond(a, b), Formula::box(a, b));
}

// [a]b -> <a>b  (sound on always-halting programs)
inline Formula rule_existence(const InterventionSpec& a, const PropFormula& b) {
  return Formula::implies(Formula::box(a, b), Formula::diamond(a, b));
}

inline void collect_cond_atoms(const Formula& f, std::vector<CondAtom>& out) {
  switch (f.kind()) {
    case Formula::Kind::Cond:
      out.push_back(f.cond_atom());
      return;
    case Formula::Kind::Not:
      collect_cond_atoms(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      collect_cond_atoms(f.lhs(), out);
      collect_cond_atoms(f.rhs(), out);
      return;
    default:
      return;
  }
}

}  // namespace causim::testgen
