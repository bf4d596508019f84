// Selection building and witness synthesis.
//
// A clause is realizable iff each of its antecedents can be mapped to a set
// of outcome clauses that simultaneously honor every diamond (some outcome
// realizes it) and every box (every outcome contains a disjunct of every box
// set). The synthesized program probes which intervention it is running
// under and then either realizes one of the selected outcomes (`choose` /
// plain assignments) or loops when the clause demands no halting execution.

#include "causim/canonical.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace causim {

namespace {

// First extension of `base` (in lexicographic pick order) that takes one
// disjunct from every set. Sets are pre-sorted, so the pick is the
// smallest-index consistent combination.
std::optional<InterventionSpec> first_joint_pick(const InterventionSpec& base,
                                                 const std::vector<std::vector<InterventionSpec>>& sets,
                                                 std::size_t at = 0) {
  if (at == sets.size()) return base;
  for (const InterventionSpec& disjunct : sets[at]) {
    if (auto merged = conjoin(base, disjunct)) {
      if (auto full = first_joint_pick(*merged, sets, at + 1)) return full;
    }
  }
  return std::nullopt;
}

std::string int_text(const InterventionSpec& s) { return to_string(s); }

}  // namespace

std::variant<SelectionFunction, ClauseInconsistent> build_selection(const NormalClause& c, Dialect d) {
  if (c.is_poisoned())
    return ClauseInconsistent{c.poisoned.front(), std::nullopt,
                              "diamond under " + int_text(c.poisoned.front()) + " has an unsatisfiable consequent"};

  const bool deterministic = d == Dialect::Det || d == Dialect::DetHalting;
  const bool halting = d == Dialect::Halting || d == Dialect::DetHalting;

  static const std::vector<std::vector<InterventionSpec>> no_sets;

  SelectionFunction f;
  for (const InterventionSpec& alpha : clause_antecedents(c)) {
    auto box_it = c.boxes.find(alpha);
    const auto& sets = box_it == c.boxes.end() ? no_sets : box_it->second;

    std::vector<InterventionSpec> diamonds;
    for (const auto& [a, consequent] : c.diamonds)
      if (a == alpha) diamonds.push_back(consequent);

    if (diamonds.empty()) {
      // Boxes only. A looping body satisfies any box vacuously, which the
      // halting dialects cannot use; there the branch must produce a real
      // outcome consistent with every box set.
      if (!halting) {
        f.entries[alpha] = {};
        continue;
      }
      auto gamma = first_joint_pick(alpha, sets);
      if (!gamma)
        return ClauseInconsistent{alpha, std::nullopt,
                                  "always-halting model needs an outcome under " + int_text(alpha) +
                                      " but no box disjunct combination is consistent"};
      f.entries[alpha] = {std::move(*gamma)};
      continue;
    }

    if (deterministic) {
      // One outcome must realize every diamond at once.
      InterventionSpec base = alpha;
      for (const InterventionSpec& beta : diamonds) {
        auto merged = conjoin(base, beta);
        if (!merged)
          return ClauseInconsistent{alpha, beta,
                                    "deterministic merge of the outcomes required under " + int_text(alpha) +
                                        " is inconsistent at <" + int_text(alpha) + "> " + int_text(beta)};
        base = std::move(*merged);
      }
      auto gamma = first_joint_pick(base, sets);
      if (!gamma)
        return ClauseInconsistent{alpha, std::nullopt,
                                  "no box disjunct combination under " + int_text(alpha) +
                                      " is consistent with the merged deterministic outcome"};
      f.entries[alpha] = {std::move(*gamma)};
      continue;
    }

    // Nondeterministic: one outcome per diamond, each additionally covering
    // every box set.
    std::vector<InterventionSpec> outcomes;
    for (const InterventionSpec& beta : diamonds) {
      auto base = conjoin(alpha, beta);
      if (!base)
        return ClauseInconsistent{alpha, beta,
                                  "<" + int_text(alpha) + "> " + int_text(beta) +
                                      " conflicts with its own antecedent"};
      auto gamma = first_joint_pick(*base, sets);
      if (!gamma)
        return ClauseInconsistent{alpha, beta,
                                  "no box disjunct under " + int_text(alpha) + " is consistent with <" +
                                      int_text(alpha) + "> " + int_text(beta)};
      outcomes.push_back(std::move(*gamma));
    }
    std::sort(outcomes.begin(), outcomes.end());
    outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());
    f.entries[alpha] = std::move(outcomes);
  }
  return f;
}

StatementPtr emit_is_intervened(AtomIndex i, AtomIndex n) {
  if (i < 1 || i > n) throw std::invalid_argument("probe index out of range");
  Atom var(i), mark(i + n), scratch(i + 2 * n);
  std::vector<StatementPtr> parts;
  parts.push_back(Statement::assign(mark, AssignSource::copy_of(var)));
  parts.push_back(Statement::assign(var, AssignSource::negation_of(var)));
  parts.push_back(Statement::assign(scratch, AssignSource::copy_of(var)));
  // The toggle stuck: the variable is clamped.
  parts.push_back(Statement::if_else(Condition::var_eq_var(scratch, mark),
                                     Statement::assign(mark, AssignSource::constant(true)),
                                     Statement::assign(mark, AssignSource::constant(false))));
  parts.push_back(Statement::assign(var, AssignSource::negation_of(var)));
  return Statement::seq(std::move(parts));
}

ConditionPtr emit_holds_from_intervention(const InterventionSpec& alpha, AtomIndex n) {
  if (n < 1) throw std::invalid_argument("probe bound must be >= 1");
  if (alpha.max_index() > n) throw std::invalid_argument("antecedent index exceeds the probe bound");
  ConditionPtr cond;
  auto add = [&](ConditionPtr next) { cond = cond ? Condition::conj(std::move(cond), std::move(next)) : next; };
  for (const Literal& l : alpha.literals()) add(Condition::var_eq_const(l.atom, l.positive));
  // Marks must identify exactly alpha's variables; requiring the other marks
  // to be clear is what makes at most one branch fire per run.
  for (AtomIndex j = 1; j <= n; ++j) add(Condition::var_eq_const(Atom(j + n), alpha.mentions(j)));
  return cond;
}

StatementPtr emit_make_hold(const InterventionSpec& beta) {
  std::vector<StatementPtr> parts;
  for (const Literal& l : beta.literals())
    parts.push_back(Statement::assign(l.atom, AssignSource::constant(l.positive)));
  return Statement::seq(std::move(parts));
}

SynthesisOutput synthesize(const NormalClause& c, const SelectionFunction& f, Dialect d, AtomIndex n) {
  if (n < 1) throw std::invalid_argument("synthesis bound must be >= 1");
  if (c.pi.max_index() > n) throw std::invalid_argument("synthesis bound below the clause's indices");
  for (const auto& [alpha, outcomes] : f.entries) {
    if (alpha.max_index() > n) throw std::invalid_argument("synthesis bound below the clause's indices");
    for (const auto& o : outcomes)
      if (o.max_index() > n) throw std::invalid_argument("synthesis bound below the clause's indices");
  }

  std::vector<StatementPtr> parts;
  for (AtomIndex i = 1; i <= n; ++i) parts.push_back(emit_is_intervened(i, n));
  for (const auto& [alpha, outcomes] : f.entries) {
    StatementPtr body;
    if (outcomes.empty()) {
      body = Statement::loop();
    } else if (outcomes.size() == 1) {
      body = emit_make_hold(outcomes.front());
    } else {
      std::vector<StatementPtr> branches;
      for (const InterventionSpec& o : outcomes) branches.push_back(emit_make_hold(o));
      body = Statement::choose(std::move(branches));
    }
    parts.push_back(Statement::if_else(emit_holds_from_intervention(alpha, n), std::move(body), Statement::empty()));
  }

  SynthesisOutput out{PLProgram(Statement::seq(std::move(parts))), Tape(), n};
  for (const Literal& l : c.pi.literals())
    if (l.positive) out.tape.set(l.atom.index, true);

  assert(conforms(out.program, d));
  (void)d;
  return out;
}

}  // namespace causim
