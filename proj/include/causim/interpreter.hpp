#pragma once

// Exhaustive execution of simulation programs under interventions.
//
// An intervention clamps selected variables before the program starts and
// discards every later write to them. Executions fork at each `choose`; the
// path tree is finite (only `loop` is non-terminating), so enumeration is
// exact rather than sampled.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "causim/pl.hpp"
#include "causim/syntax.hpp"
#include "causim/tape.hpp"

namespace causim {

// The semantic content of an intervention clause: index -> clamped bit.
class ClampSet {
 public:
  ClampSet() = default;

  void set(AtomIndex i, bool b) { clamps_[i] = b; }
  std::optional<bool> value(AtomIndex i) const {
    auto it = clamps_.find(i);
    if (it == clamps_.end()) return std::nullopt;
    return it->second;
  }
  bool clamped(AtomIndex i) const { return clamps_.count(i) != 0; }
  bool empty() const { return clamps_.empty(); }
  const std::map<AtomIndex, bool>& entries() const { return clamps_; }

  auto operator<=>(const ClampSet&) const = default;

 private:
  std::map<AtomIndex, bool> clamps_;
};

// Positive literal -> clamp to 1, negative -> clamp to 0.
ClampSet clamp_of(const InterventionSpec& s);

// The initial overwrite: t with every clamped index forced to its clamp bit.
Tape apply_clamps(Tape t, const ClampSet& c);

struct ExecutionSummary {
  std::set<Tape> halting_outputs;   // final tapes of the non-divergent paths
  bool diverges = false;            // some path reached `loop`
  std::uint64_t paths_explored = 0;
};

// Runs p on x under clamps c, enumerating every execution path.
ExecutionSummary execute(const PLProgram& p, const Tape& x, const ClampSet& c);

struct ExecutionPath {
  std::vector<std::size_t> choices;  // branch picked at each choose, in order
  std::optional<Tape> output;        // nullopt when the path diverges
};

// Like execute, but keeps one entry per path with its choose decisions.
std::vector<ExecutionPath> enumerate_paths(const PLProgram& p, const Tape& x, const ClampSet& c);

struct TraceOutcome {
  bool divergent;
  Tape tape;  // meaningful iff !divergent
};

// Replays the single path that picks branch_choices[k] at the k-th choose.
// Throws std::out_of_range when the list is too short or a choice index
// exceeds the branch count.
TraceOutcome trace_execute(const PLProgram& p, const Tape& x, const ClampSet& c,
                           std::span<const std::size_t> branch_choices);

// Tape literal: comma-separated "Xi=b" pairs, e.g. "X1=1,X3=1"; absent
// indices are 0. The empty string is the all-zero tape.
Tape parse_tape(std::string_view text);

}  // namespace causim
