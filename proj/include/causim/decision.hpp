#pragma once

// Satisfiability and validity per dialect, membership in the canonical
// program fragment, and a brute-force oracle over finite abstract tables.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "causim/canonical.hpp"
#include "causim/model_checker.hpp"
#include "causim/normal_form.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"

namespace causim {

struct ClauseRejection {
  std::size_t clause_index;
  NormalClause clause;
  ClauseInconsistent reason;
};

struct SatWitness {
  SynthesisOutput model;
  NormalClause clause;
  std::size_t clause_index;
};

struct SatResult {
  std::optional<SatWitness> witness;        // engaged iff satisfiable
  std::vector<ClauseRejection> rejections;  // complete when unsatisfiable

  bool satisfiable() const { return witness.has_value(); }
};

// Streams normal-form clauses in order and returns the first that admits a
// selection under d, synthesized and re-verified with check() (a verification
// failure is an internal error, never a "no"). Deterministic: the lowest
// clause index wins.
SatResult sat(const Formula& f, Dialect d);

struct ValidityResult {
  bool valid;
  std::optional<SatWitness> countermodel;  // engaged iff invalid
};

// valid(f) = unsatisfiable(!f); the countermodel is the witness of !f.
ValidityResult valid(const Formula& f, Dialect d);

// True iff p has exactly the canonical two-part shape for f: toggle probes
// for X_1..X_n in order (n = tape_bound(f)), then at most one
// intervention-detection if per antecedent of f, whose body is a choose of
// at most c * formula_size(f) assignment-sequence branches over indices
// <= n, one such assignment sequence, or a single loop. Dialect limits on
// choose/loop are checked separately via validate_dialect.
bool in_fragment(const PLProgram& p, const Formula& f, std::int64_t c);

// Smallest c for which in_fragment accepts this witness.
std::int64_t min_fragment_c(const SynthesisOutput& out, const Formula& f);

// Finite semantic core of a canonical-shape model: a base tape plus one
// halting-output set per antecedent, all over indices <= n.
struct AbstractTable {
  Tape base_tape;
  std::map<InterventionSpec, std::set<Tape>> outputs;
};

// Enumerates every abstract table within the bounds and evaluates f directly
// on it (bit atoms on the base tape, conditionals over the output sets,
// dialect limits on output-set sizes). Sound for "true": every table is
// realizable by a canonical-shape program. For "false" it is complete only
// relative to the bounds, which is what makes it a differential-testing
// oracle rather than a decision procedure. Throws std::invalid_argument when
// f's atoms exceed max_n.
bool brute_force_sat_small(const Formula& f, Dialect d, AtomIndex max_n, std::size_t max_outputs);

}  // namespace causim
