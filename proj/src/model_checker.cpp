#include "causim/model_checker.hpp"

#include <map>

namespace causim {

namespace {

struct Checker {
  const Model& m;
  // One program run per distinct antecedent, shared across literals.
  std::map<ClampSet, ExecutionSummary> cache;

  const ExecutionSummary& run_under(const InterventionSpec& antecedent) {
    ClampSet c = clamp_of(antecedent);
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, execute(m.program, m.tape, c)).first;
    return it->second;
  }

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return m.tape.get(f.atom_value().index);
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Bottom:
        return false;
      case Formula::Kind::Cond: {
        const CondAtom& c = f.cond_atom();
        const ExecutionSummary& summary = run_under(c.antecedent);
        if (c.modality == Modality::Box) {
          // Vacuously true when nothing halts.
          for (const Tape& out : summary.halting_outputs)
            if (!prop_eval(out, c.consequent)) return false;
          return true;
        }
        for (const Tape& out : summary.halting_outputs)
          if (prop_eval(out, c.consequent)) return true;
        return false;
      }
      case Formula::Kind::Not:
        return !eval(f.operand());
      case Formula::Kind::And:
        return eval(f.lhs()) && eval(f.rhs());
      case Formula::Kind::Or:
        return eval(f.lhs()) || eval(f.rhs());
    }
    return false;
  }
};

}  // namespace

bool check(const Model& m, const Formula& f) {
  Checker checker{m, {}};
  return checker.eval(f);
}

}  // namespace causim
