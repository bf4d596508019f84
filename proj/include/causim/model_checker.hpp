#pragma once

// Deciding whether a (program, tape) model satisfies a formula.

#include "causim/interpreter.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"
#include "causim/tape.hpp"

namespace causim {

struct Model {
  PLProgram program;
  Tape tape;
};

// Bit atoms are evaluated on m.tape. [a]b holds iff every halting output of
// m.program under the a-clamps satisfies b (vacuously true when there are
// none); <a>b holds iff some output does. Total: the interpreter enumerates
// executions exactly.
bool check(const Model& m, const Formula& f);

// Structured fast path for a single conditional atom, valid only for
// programs in the canonical probe-prefix/branch-table shape produced by
// synthesize(). Reads the outcome off the matching branch body instead of
// enumerating the whole program; agrees with check() on such programs.
// Throws std::invalid_argument when the program does not have the shape.
bool fast_check_literal(const Model& m, const CondAtom& literal);

}  // namespace causim
