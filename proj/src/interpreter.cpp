#include "causim/interpreter.hpp"

#include <functional>
#include <stdexcept>

namespace causim {

std::string Tape::to_string() const {
  std::string out;
  for (AtomIndex i : ones_) {
    if (!out.empty()) out += ",";
    out += "X" + std::to_string(i) + "=1";
  }
  return out;
}

ClampSet clamp_of(const InterventionSpec& s) {
  ClampSet c;
  for (const Literal& l : s.literals()) c.set(l.atom.index, l.positive);
  return c;
}

Tape apply_clamps(Tape t, const ClampSet& c) {
  for (const auto& [i, b] : c.entries()) t.set(i, b);
  return t;
}

namespace {

void apply_assign(const Statement& s, Tape& t, const ClampSet& clamps) {
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
  // Writes to clamped variables are discarded.
  if (!clamps.clamped(s.target->index)) t.set(s.target->index, value);
}

// Depth-first path enumeration. `done` is invoked once per halting path with
// its final tape; divergent paths are reported through `diverged`. The
// choices vector always holds the choose decisions of the path under
// construction.
struct Enumerator {
  const ClampSet& clamps;
  std::vector<std::size_t> choices;
  std::function<void(const std::vector<std::size_t>&, const Tape&)> done;
  std::function<void(const std::vector<std::size_t>&)> diverged;

  void run(const Statement& s, Tape t) { run_inner(s, std::move(t), [&](Tape out) { done(choices, out); }); }

  void run_inner(const Statement& s, Tape t, const std::function<void(Tape)>& k) {
    switch (s.kind) {
      case Statement::Kind::Empty:
        k(std::move(t));
        return;
      case Statement::Kind::Assign:
        apply_assign(s, t, clamps);
        k(std::move(t));
        return;
      case Statement::Kind::Seq:
        run_list(s.stmts, 0, std::move(t), k);
        return;
      case Statement::Kind::Loop:
        diverged(choices);
        return;
      case Statement::Kind::If: {
        const bool taken = eval_condition(*s.cond, t);
        run_inner(taken ? *s.then_branch : *s.else_branch, std::move(t), k);
        return;
      }
      case Statement::Kind::Choose:
        for (std::size_t b = 0; b < s.branches.size(); ++b) {
          choices.push_back(b);
          run_inner(*s.branches[b], t, k);
          choices.pop_back();
        }
        return;
    }
  }

  void run_list(const std::vector<StatementPtr>& stmts, std::size_t at, Tape t,
                const std::function<void(Tape)>& k) {
    if (at == stmts.size()) {
      k(std::move(t));
      return;
    }
    run_inner(*stmts[at], std::move(t),
              [&, at](Tape next) { run_list(stmts, at + 1, std::move(next), k); });
  }
};

}  // namespace

ExecutionSummary execute(const PLProgram& p, const Tape& x, const ClampSet& c) {
  ExecutionSummary summary;
  Enumerator e{c,
               {},
               [&](const std::vector<std::size_t>&, const Tape& out) {
                 summary.halting_outputs.insert(out);
                 ++summary.paths_explored;
               },
               [&](const std::vector<std::size_t>&) {
                 summary.diverges = true;
                 ++summary.paths_explored;
               }};
  e.run(*p.body, apply_clamps(x, c));
  return summary;
}

std::vector<ExecutionPath> enumerate_paths(const PLProgram& p, const Tape& x, const ClampSet& c) {
  std::vector<ExecutionPath> paths;
  Enumerator e{c,
               {},
               [&](const std::vector<std::size_t>& ch, const Tape& out) { paths.push_back({ch, out}); },
               [&](const std::vector<std::size_t>& ch) { paths.push_back({ch, std::nullopt}); }};
  e.run(*p.body, apply_clamps(x, c));
  return paths;
}

namespace {

struct Tracer {
  const ClampSet& clamps;
  std::span<const std::size_t> choices;
  std::size_t next_choice = 0;
  bool divergent = false;

  Tape run(const Statement& s, Tape t) {
    if (divergent) return t;
    switch (s.kind) {
      case Statement::Kind::Empty:
        return t;
      case Statement::Kind::Assign:
        apply_assign(s, t, clamps);
        return t;
      case Statement::Kind::Seq:
        for (const auto& part : s.stmts) {
          t = run(*part, std::move(t));
          if (divergent) return t;
        }
        return t;
      case Statement::Kind::Loop:
        divergent = true;
        return t;
      case Statement::Kind::If: {
        const bool taken = eval_condition(*s.cond, t);
        return run(taken ? *s.then_branch : *s.else_branch, std::move(t));
      }
      case Statement::Kind::Choose: {
        if (next_choice >= choices.size())
          throw std::out_of_range("insufficient branch choices: a choose statement was reached after " +
                                  std::to_string(choices.size()) + " choices were consumed");
        std::size_t pick = choices[next_choice++];
        if (pick >= s.branches.size())
          throw std::out_of_range("branch choice " + std::to_string(pick) + " out of range for a choose with " +
                                  std::to_string(s.branches.size()) + " branches");
        return run(*s.branches[pick], std::move(t));
      }
    }
    return t;
  }
};

}  // namespace

TraceOutcome trace_execute(const PLProgram& p, const Tape& x, const ClampSet& c,
                           std::span<const std::size_t> branch_choices) {
  Tracer tracer{c, branch_choices};
  Tape out = tracer.run(*p.body, apply_clamps(x, c));
  return TraceOutcome{tracer.divergent, std::move(out)};
}

}  // namespace causim
