// Recognition of the canonical program shape and the structured literal
// verifier that exploits it.
//
// A canonical-shape program consists of the toggle-probe prefix for X_1..X_n
// followed by intervention-detection if-statements. Under the intervention
// named by a conditional atom, at most one of those branches fires (the probe
// marks identify the clamped variable set exactly), so the atom's truth value
// can be read off that branch's body: quantify over the choose branches, run
// the single assignment sequence, or report the box/diamond polarity of a
// loop. No global path enumeration is needed.

#include <algorithm>
#include <cassert>
#include <optional>

#include "causim/decision.hpp"
#include "causim/model_checker.hpp"

namespace causim {

namespace {

struct FragmentShape {
  AtomIndex n;
  // Detection branches in program order.
  std::vector<std::pair<InterventionSpec, StatementPtr>> branches;

  const StatementPtr* body_for(const InterventionSpec& alpha) const {
    for (const auto& [a, body] : branches)
      if (a == alpha) return &body;
    return nullptr;
  }
};

// Decodes an intervention-detection condition: value tests for the
// antecedent's literals in index order, then one mark test per probe index.
std::optional<InterventionSpec> decode_detection_condition(const ConditionPtr& cond, AtomIndex n) {
  std::vector<ConditionPtr> parts = conjuncts(cond);
  std::vector<Literal> lits;
  std::size_t k = 0;
  while (k < parts.size()) {
    const Condition& c = *parts[k];
    if (c.kind != Condition::Kind::VarEqConst) return std::nullopt;
    if (c.lhs->index > n) break;  // first mark test
    if (!lits.empty() && lits.back().atom.index >= c.lhs->index) return std::nullopt;
    lits.push_back(Literal{*c.lhs, c.bit});
    ++k;
  }
  if (parts.size() - k != static_cast<std::size_t>(n)) return std::nullopt;
  InterventionSpec alpha{lits};
  for (AtomIndex j = 1; j <= n; ++j, ++k) {
    const Condition& c = *parts[k];
    if (c.kind != Condition::Kind::VarEqConst) return std::nullopt;
    if (c.lhs->index != j + n) return std::nullopt;
    if (c.bit != alpha.mentions(j)) return std::nullopt;
  }
  return alpha;
}

std::optional<FragmentShape> parse_fragment(const PLProgram& p) {
  std::vector<StatementPtr> stmts = flatten(p.body);

  // The probe prefix fixes n: its first statement is X_{1+n} := X_1.
  if (stmts.empty()) return std::nullopt;
  const Statement& first = *stmts.front();
  if (first.kind != Statement::Kind::Assign || first.source.kind != AssignSource::Kind::Var ||
      first.source.var->index != 1 || first.target->index < 2)
    return std::nullopt;
  AtomIndex n = first.target->index - 1;

  std::size_t at = 0;
  for (AtomIndex i = 1; i <= n; ++i) {
    std::vector<StatementPtr> probe = flatten(emit_is_intervened(i, n));
    for (const StatementPtr& expected : probe) {
      if (at >= stmts.size() || !equal(*stmts[at], *expected)) return std::nullopt;
      ++at;
    }
  }

  FragmentShape shape{n, {}};
  for (; at < stmts.size(); ++at) {
    const Statement& s = *stmts[at];
    if (s.kind != Statement::Kind::If || s.else_branch->kind != Statement::Kind::Empty) return std::nullopt;
    auto alpha = decode_detection_condition(s.cond, n);
    if (!alpha) return std::nullopt;
    if (!equal(*s.cond, *emit_holds_from_intervention(*alpha, n))) return std::nullopt;
    if (shape.body_for(*alpha)) return std::nullopt;  // one branch per antecedent
    shape.branches.emplace_back(std::move(*alpha), s.then_branch);
  }
  return shape;
}

// True when s is a (possibly empty) run of plain assignments with targets
// bounded by n.
bool is_assignment_sequence(const StatementPtr& s, AtomIndex n) {
  for (const StatementPtr& part : flatten(s)) {
    if (part->kind != Statement::Kind::Assign) return false;
    if (part->target->index > n) return false;
  }
  return true;
}

// Runs a deterministic statement (no choose, no loop) in place.
void run_straightline(const Statement& s, Tape& t, const ClampSet& clamps) {
  switch (s.kind) {
    case Statement::Kind::Empty:
      return;
    case Statement::Kind::Assign: {
      bool value = false;
      switch (s.source.kind) {
        case AssignSource::Kind::Const:
          value = s.source.bit;
          break;
        case AssignSource::Kind::Var:
          value = t.get(s.source.var->index);
          break;
        case AssignSource::Kind::NegVar:
          value = !t.get(s.source.var->index);
          break;
      }
      if (!clamps.clamped(s.target->index)) t.set(s.target->index, value);
      return;
    }
    case Statement::Kind::Seq:
      for (const StatementPtr& part : s.stmts) run_straightline(*part, t, clamps);
      return;
    case Statement::Kind::If:
      run_straightline(eval_condition(*s.cond, t) ? *s.then_branch : *s.else_branch, t, clamps);
      return;
    default:
      throw std::logic_error("straightline runner reached a choose or loop");
  }
}

}  // namespace

bool fast_check_literal(const Model& m, const CondAtom& literal) {
  auto shape = parse_fragment(m.program);
  if (!shape) throw std::invalid_argument("fast_check_literal: the program is not in canonical shape");
  // Clamping a probe mark or scratch variable would void the one-branch
  // guarantee, so antecedents must stay within the query-variable range.
  if (literal.antecedent.max_index() > shape->n)
    throw std::invalid_argument("fast_check_literal: the antecedent exceeds the program's query-variable bound");

  ClampSet clamps = clamp_of(literal.antecedent);
  Tape t = apply_clamps(m.tape, clamps);
  for (AtomIndex i = 1; i <= shape->n; ++i) run_straightline(*emit_is_intervened(i, shape->n), t, clamps);

  const StatementPtr* body = shape->body_for(literal.antecedent);
  const PropFormula& beta = literal.consequent;
  if (!body) {
    // No detection branch fires; the run halts with the post-probe tape.
    return prop_eval(t, beta);
  }
  switch ((*body)->kind) {
    case Statement::Kind::Loop:
      return literal.modality == Modality::Box;
    case Statement::Kind::Choose: {
      bool all = true, any = false;
      for (const StatementPtr& branch : (*body)->branches) {
        Tape out = t;
        run_straightline(*branch, out, clamps);
        bool holds = prop_eval(out, beta);
        all = all && holds;
        any = any || holds;
      }
      return literal.modality == Modality::Box ? all : any;
    }
    default: {
      Tape out = t;
      run_straightline(**body, out, clamps);
      return prop_eval(out, beta);
    }
  }
}

bool in_fragment(const PLProgram& p, const Formula& f, std::int64_t c) {
  auto shape = parse_fragment(p);
  if (!shape) return false;
  if (shape->n != tape_bound(f)) return false;

  std::set<InterventionSpec> allowed = antecedents_of(f);
  std::int64_t branch_cap = c * formula_size(f);
  for (const auto& [alpha, body] : shape->branches) {
    if (!allowed.count(alpha)) return false;
    switch (body->kind) {
      case Statement::Kind::Loop:
        break;
      case Statement::Kind::Choose: {
        if (static_cast<std::int64_t>(body->branches.size()) > branch_cap) return false;
        for (const StatementPtr& branch : body->branches)
          if (!is_assignment_sequence(branch, shape->n)) return false;
        break;
      }
      default:
        if (!is_assignment_sequence(body, shape->n)) return false;
        break;
    }
  }
  return true;
}

std::int64_t min_fragment_c(const SynthesisOutput& out, const Formula& f) {
  std::int64_t max_branches = 0;
  for (const StatementPtr& s : flatten(out.program.body)) {
    if (s->kind != Statement::Kind::If) continue;
    if (s->then_branch->kind == Statement::Kind::Choose)
      max_branches = std::max<std::int64_t>(max_branches, s->then_branch->branches.size());
  }
  std::int64_t size = std::max<std::int64_t>(1, formula_size(f));
  return std::max<std::int64_t>(1, (max_branches + size - 1) / size);
}

}  // namespace causim
