#pragma once

// Canonical witness synthesis: from a normal-form clause to a program that
// detects which intervention it is running under (by attempting to toggle
// each relevant variable) and then realizes exactly the outcomes the clause
// requires.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "causim/normal_form.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"
#include "causim/tape.hpp"

namespace causim {

// Maps each antecedent of a clause to the set of outcome clauses the witness
// program must realize under that intervention. Every outcome extends its
// antecedent. Det dialects keep at most one outcome per antecedent
// (DetHalting exactly one); Halting dialects never map to the empty set.
struct SelectionFunction {
  std::map<InterventionSpec, std::vector<InterventionSpec>> entries;
};

// Why a clause admits no selection under the requested dialect.
struct ClauseInconsistent {
  InterventionSpec antecedent;
  std::optional<InterventionSpec> diamond;  // the offending consequent, if any
  std::string detail;
};

std::variant<SelectionFunction, ClauseInconsistent> build_selection(const NormalClause& c, Dialect d);

// Toggle probe for X_i: records in X_{i+n} whether X_i is clamped, using
// X_{i+2n} as scratch, and leaves X_i unchanged on every execution.
StatementPtr emit_is_intervened(AtomIndex i, AtomIndex n);

// Condition satisfied iff the current run is under exactly the intervention
// `alpha`: the mentioned variables carry the right values and probe marks,
// and every other mark up to n is clear. Probes for 1..n must have run.
ConditionPtr emit_holds_from_intervention(const InterventionSpec& alpha, AtomIndex n);

// Constant assignments, in index order, making `beta` hold.
StatementPtr emit_make_hold(const InterventionSpec& beta);

struct SynthesisOutput {
  PLProgram program;
  Tape tape;
  AtomIndex n;  // query-variable bound; the program touches nothing above 3n
};

// Probe prefix for i = 1..n, then one intervention-detection branch per
// antecedent: a choose over the selected outcomes (>= 2 of them), the single
// outcome's assignments, or `loop` when no outcome is allowed. The tape sets
// exactly the positive literals of the clause's propositional part.
//
// Requires f = build_selection(c, d) and n >= every index in c (n >= 1).
// The result conforms to d and satisfies clause_to_formula(c).
SynthesisOutput synthesize(const NormalClause& c, const SelectionFunction& f, Dialect d, AtomIndex n);

}  // namespace causim
