// Satisfiability via the canonical construction, validity by duality, and
// the finite-table oracle used for differential testing.

#include "causim/decision.hpp"

#include <functional>
#include <stdexcept>

namespace causim {

SatResult sat(const Formula& f, Dialect d) {
  NormalFormStream stream(f);
  AtomIndex n = tape_bound(f);
  SatResult result;
  std::size_t index = 0;
  while (auto clause = stream.next()) {
    auto selection = build_selection(*clause, d);
    if (auto* rejection = std::get_if<ClauseInconsistent>(&selection)) {
      result.rejections.push_back({index, std::move(*clause), std::move(*rejection)});
      ++index;
      continue;
    }
    SynthesisOutput out = synthesize(*clause, std::get<SelectionFunction>(selection), d, n);
    // Defense in depth: the witness must satisfy the input formula itself. A
    // failure here is a bug in the pipeline, never an unsatisfiable verdict.
    if (!check(Model{out.program, out.tape}, f))
      throw std::logic_error("internal error: synthesized witness failed verification against the formula");
    result.witness = SatWitness{std::move(out), std::move(*clause), index};
    return result;
  }
  return result;
}

ValidityResult valid(const Formula& f, Dialect d) {
  SatResult negated = sat(Formula::negation(f), d);
  if (negated.satisfiable()) return ValidityResult{false, std::move(negated.witness)};
  return ValidityResult{true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

namespace {

std::vector<Tape> tapes_over(AtomIndex n) {
  std::vector<Tape> out;
  const std::uint64_t limit = std::uint64_t(1) << n;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    Tape t;
    for (AtomIndex i = 1; i <= n; ++i)
      if (bits & (std::uint64_t(1) << (i - 1))) t.set(i, true);
    out.push_back(std::move(t));
  }
  return out;
}

bool eval_on_table(const AbstractTable& table, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return table.base_tape.get(f.atom_value().index);
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Cond: {
      const CondAtom& c = f.cond_atom();
      const std::set<Tape>& outputs = table.outputs.at(c.antecedent);
      if (c.modality == Modality::Box) {
        for (const Tape& o : outputs)
          if (!prop_eval(o, c.consequent)) return false;
        return true;
      }
      for (const Tape& o : outputs)
        if (prop_eval(o, c.consequent)) return true;
      return false;
    }
    case Formula::Kind::Not:
      return !eval_on_table(table, f.operand());
    case Formula::Kind::And:
      return eval_on_table(table, f.lhs()) && eval_on_table(table, f.rhs());
    case Formula::Kind::Or:
      return eval_on_table(table, f.lhs()) || eval_on_table(table, f.rhs());
  }
  return false;
}

// Enumerates subsets of `candidates` with size in [min_size, max_size],
// invoking `found` for each; stops early once `found` returns true.
bool enumerate_subsets(const std::vector<Tape>& candidates, std::size_t min_size, std::size_t max_size,
                       std::set<Tape>& current, std::size_t start,
                       const std::function<bool(const std::set<Tape>&)>& found) {
  if (current.size() >= min_size && found(current)) return true;
  if (current.size() == max_size) return false;
  for (std::size_t k = start; k < candidates.size(); ++k) {
    current.insert(candidates[k]);
    if (enumerate_subsets(candidates, min_size, max_size, current, k + 1, found)) return true;
    current.erase(candidates[k]);
  }
  return false;
}

}  // namespace

bool brute_force_sat_small(const Formula& f, Dialect d, AtomIndex max_n, std::size_t max_outputs) {
  AtomIndex n = max_atom_index(f);
  if (n > max_n) throw std::invalid_argument("brute_force_sat_small: formula exceeds the oracle's index bound");
  if (max_n > 16) throw std::invalid_argument("brute_force_sat_small: index bound too large to enumerate");
  if (max_outputs < 1) throw std::invalid_argument("brute_force_sat_small: max_outputs must be >= 1");

  std::vector<InterventionSpec> antecedents;
  for (const InterventionSpec& a : antecedents_of(f)) antecedents.push_back(a);

  std::size_t min_outputs = d == Dialect::Halting || d == Dialect::DetHalting ? 1 : 0;
  std::size_t output_cap = d == Dialect::Det || d == Dialect::DetHalting ? 1 : max_outputs;

  const std::vector<Tape> all_tapes = tapes_over(n);

  // Clamp-respecting candidate outputs per antecedent.
  std::vector<std::vector<Tape>> candidates;
  for (const InterventionSpec& a : antecedents) {
    ClampSet clamps = clamp_of(a);
    std::vector<Tape> compatible;
    for (const Tape& t : all_tapes)
      if (apply_clamps(t, clamps) == t) compatible.push_back(t);
    candidates.push_back(std::move(compatible));
  }

  AbstractTable table;
  std::function<bool(std::size_t)> assign_outputs = [&](std::size_t k) -> bool {
    if (k == antecedents.size()) return eval_on_table(table, f);
    std::set<Tape> current;
    return enumerate_subsets(candidates[k], min_outputs, output_cap, current, 0,
                             [&](const std::set<Tape>& outputs) {
                               table.outputs[antecedents[k]] = outputs;
                               return assign_outputs(k + 1);
                             });
  };

  for (const Tape& base : all_tapes) {
    table.base_tape = base;
    if (assign_outputs(0)) return true;
  }
  return false;
}

}  // namespace causim
