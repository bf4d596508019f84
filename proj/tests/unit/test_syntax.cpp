#include <doctest.h>

#include <random>

#include "causim/model_checker.hpp"
#include "causim/syntax.hpp"
#include "generators.hpp"

using namespace causim;

TEST_CASE("parse_formula builds the expected structure") {
  Formula f = parse_formula("[X1 & !X2] (X2 | X3)");
  REQUIRE(f.kind() == Formula::Kind::Cond);
  const CondAtom& c = f.cond_atom();
  CHECK(c.modality == Modality::Box);
  CHECK(c.antecedent == InterventionSpec({pos(1), neg(2)}));
  CHECK(c.consequent == PropFormula::disj(PropFormula::atom(2), PropFormula::atom(3)));

  Formula g = parse_formula("<T> X1");
  REQUIRE(g.kind() == Formula::Kind::Cond);
  CHECK(g.cond_atom().modality == Modality::Diamond);
  CHECK(g.cond_atom().antecedent.is_top());
  CHECK(g.cond_atom().consequent == PropFormula::atom(1));
}

TEST_CASE("parse_formula rejects malformed antecedents") {
  CHECK_THROWS_AS(parse_formula("[X2 & X1] X3"), ParseError);
  CHECK_THROWS_AS(parse_formula("[X1 & X1] X3"), ParseError);
  CHECK_THROWS_AS(parse_formula("[X1 | X2] X3"), ParseError);
  CHECK_THROWS_AS(parse_formula("[X1] [X2] X3"), ParseError);  // no nesting
  CHECK_THROWS_AS(parse_formula("[X1] (X2 & [X2]X3)"), ParseError);
  CHECK_THROWS_AS(parse_formula("X1 &"), ParseError);
  CHECK_THROWS_AS(parse_formula("X0"), ParseError);

  try {
    parse_formula("[X2 & X1] X3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
    CHECK(e.line == 1);
  }
}

TEST_CASE("precedence and sugar") {
  // ! > & > | and modal operators bind to the immediately following formula.
  CHECK(parse_formula("!X1 & X2 | X3") ==
        Formula::disj(Formula::conj(Formula::negation(Formula::atom(1)), Formula::atom(2)), Formula::atom(3)));
  CHECK(parse_formula("[X1] X2 | X3") ==
        Formula::disj(Formula::box(InterventionSpec({pos(1)}), PropFormula::atom(2)), Formula::atom(3)));
  CHECK(parse_formula("X1 -> X2") == Formula::disj(Formula::negation(Formula::atom(1)), Formula::atom(2)));
  CHECK(parse_formula("X1 <-> X2") ==
        Formula::iff(Formula::atom(1), Formula::atom(2)));
  // Sugar expands inside consequents too.
  CHECK(parse_formula("[X1] (X2 -> X3)") ==
        Formula::box(InterventionSpec({pos(1)}),
                     PropFormula::disj(PropFormula::negation(PropFormula::atom(2)), PropFormula::atom(3))));
}

TEST_CASE("printer and parser round-trip") {
  for (const char* text : {"[X1 & !X2] (X2 | X3)", "<T> X1", "!([X1] X2 & X3)", "T", "F",
                           "X1 & X2 & X3 | !X4", "[X2] !X1 | <X1 & X2 & !X4> (X1 & (X2 | !X3))"}) {
    Formula f = parse_formula(text);
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("printer and parser round-trip on random formulas") {
  testgen::Rng rng(20260810);
  for (int k = 0; k < 300; ++k) {
    Formula f = testgen::random_formula(rng, {4, 8, 4, 3});
    CAPTURE(to_string(f));
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("int_equivalent sorts, deduplicates, and classifies") {
  // !X2 & X1 & X1 reorders and deduplicates to X1 & !X2.
  PropFormula p = PropFormula::conj(
      PropFormula::conj(PropFormula::negation(PropFormula::atom(2)), PropFormula::atom(1)), PropFormula::atom(1));
  auto r = int_equivalent(p);
  REQUIRE(r.status == IntEquivStatus::Ok);
  CHECK(*r.spec == InterventionSpec({pos(1), neg(2)}));

  auto contradictory = int_equivalent(PropFormula::conj(PropFormula::atom(1), PropFormula::negation(PropFormula::atom(1))));
  CHECK(contradictory.status == IntEquivStatus::Inconsistent);

  auto top = int_equivalent(PropFormula::top());
  REQUIRE(top.status == IntEquivStatus::Ok);
  CHECK(top.spec->is_top());

  CHECK(int_equivalent(PropFormula::bottom()).status == IntEquivStatus::Inconsistent);
  CHECK(int_equivalent(PropFormula::disj(PropFormula::atom(1), PropFormula::atom(2))).status ==
        IntEquivStatus::NotConjunctive);
  CHECK(int_equivalent(PropFormula::negation(PropFormula::conj(PropFormula::atom(1), PropFormula::atom(2)))).status ==
        IntEquivStatus::NotConjunctive);
  // Shape violations win over literal clashes.
  CHECK(int_equivalent(PropFormula::conj(PropFormula::disj(PropFormula::atom(3), PropFormula::atom(3)),
                                         PropFormula::conj(PropFormula::atom(1),
                                                           PropFormula::negation(PropFormula::atom(1)))))
            .status == IntEquivStatus::NotConjunctive);
}

TEST_CASE("int_equivalent output is ordered and equivalent to its input") {
  testgen::Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    PropFormula p = testgen::random_prop(rng, 4, 3);
    auto r = int_equivalent(p);
    if (r.status != IntEquivStatus::Ok) continue;
    const auto& lits = r.spec->literals();
    for (std::size_t i = 1; i < lits.size(); ++i) CHECK(lits[i - 1].atom.index < lits[i].atom.index);
    // Equivalent to the input on every tape over the mentioned variables.
    for (int trial = 0; trial < 16; ++trial) {
      Tape t = testgen::random_tape(rng, 4);
      CHECK(prop_eval(t, p) == prop_eval(t, r.spec->to_prop()));
    }
  }
}

TEST_CASE("to_nnf pushes negations to atoms and dualizes modalities") {
  CHECK(to_nnf(parse_formula("!([X1] X2)")) ==
        Formula::diamond(InterventionSpec({pos(1)}), PropFormula::negation(PropFormula::atom(2))));
  CHECK(to_nnf(parse_formula("!(X1 & X2)")) ==
        Formula::disj(Formula::negation(Formula::atom(1)), Formula::negation(Formula::atom(2))));
  CHECK(to_nnf(parse_formula("!(<X1> (X2 | X3))")) ==
        Formula::box(InterventionSpec({pos(1)}),
                     PropFormula::conj(PropFormula::negation(PropFormula::atom(2)),
                                       PropFormula::negation(PropFormula::atom(3)))));
  CHECK(to_nnf(parse_formula("!!X1")) == Formula::atom(1));
  CHECK(to_nnf(parse_formula("!T")) == Formula::bottom());
}

TEST_CASE("to_nnf preserves truth on random models") {
  testgen::Rng rng(272727);
  for (int k = 0; k < 100; ++k) {
    Formula f = testgen::random_formula(rng, {4, 6, 3, 2});
    Formula nnf = to_nnf(f);
    for (int trial = 0; trial < 3; ++trial) {
      Model m{testgen::random_program(rng, 4, 4, true, true), testgen::random_tape(rng, 4)};
      CAPTURE(to_string(f));
      CHECK(check(m, f) == check(m, nnf));
    }
  }
}

TEST_CASE("prop_eval") {
  Tape t1 = Tape::from_ones({1});
  CHECK(prop_eval(t1, PropFormula::conj(PropFormula::atom(1), PropFormula::negation(PropFormula::atom(2)))));
  CHECK(prop_eval(Tape(), PropFormula::negation(PropFormula::atom(7))));
  CHECK(prop_eval(Tape::from_ones({2}), PropFormula::disj(PropFormula::atom(1), PropFormula::atom(2))));
  CHECK_FALSE(prop_eval(Tape(), PropFormula::bottom()));
  CHECK(prop_eval(Tape(), PropFormula::top()));
}

TEST_CASE("intervention spec invariants") {
  CHECK_THROWS_AS(InterventionSpec({pos(2), pos(1)}), std::invalid_argument);
  CHECK_THROWS_AS(InterventionSpec({pos(1), neg(1)}), std::invalid_argument);
  CHECK_FALSE(InterventionSpec::normalized({pos(1), neg(1)}).has_value());
  CHECK(InterventionSpec::normalized({neg(2), pos(1), pos(1)}).value() == InterventionSpec({pos(1), neg(2)}));

  CHECK(conjoin(InterventionSpec({pos(1)}), InterventionSpec({neg(2)})).value() ==
        InterventionSpec({pos(1), neg(2)}));
  CHECK_FALSE(conjoin(InterventionSpec({pos(1)}), InterventionSpec({neg(1)})).has_value());
  CHECK(extends(InterventionSpec({pos(1), neg(2)}), InterventionSpec({pos(1)})));
  CHECK_FALSE(extends(InterventionSpec({pos(1)}), InterventionSpec({pos(1), neg(2)})));
}

TEST_CASE("formula measures") {
  Formula f = parse_formula("[X1 & X2] (X3 | X4) & !X5");
  CHECK(max_atom_index(f) == 5);
  CHECK(tape_bound(parse_formula("[T] T")) == 1);  // probe bound never collapses to zero
  auto ants = antecedents_of(parse_formula("[X1]X2 & <X1>X2 & <T>X3"));
  CHECK(ants.size() == 2);
  CHECK(ants.count(InterventionSpec()) == 1);
  CHECK(ants.count(InterventionSpec({pos(1)})) == 1);
  CHECK(formula_size(Formula::atom(1)) == 1);
  CHECK(formula_size(parse_formula("X1 & X2")) == 3);
}
