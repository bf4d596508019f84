#pragma once

// Disjunctive normal form over conditional clauses. Every formula is
// equivalent to a disjunction of clauses
//
//     pi  &  [a_i](b_1 | ... | b_k)...  &  <a_k>b_k...
//
// where pi is a consistent literal conjunction and every antecedent and
// consequent part is an intervention clause. Clause count is worst-case
// exponential; clauses are produced lazily so searches can stop early.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "causim/syntax.hpp"

namespace causim {

struct NormalClause {
  // Propositional part: a consistent literal conjunction (empty = T).
  InterventionSpec pi;

  // Box part. Each antecedent maps to one or more disjunct sets; a clause
  // with [a]D1 and [a]D2 keeps both sets, and the selection builder later
  // requires a pick from every set simultaneously (equivalent to merging
  // them up front, without the cross-product blow-up here). An empty set is
  // the F consequent.
  std::map<InterventionSpec, std::vector<std::vector<InterventionSpec>>> boxes;

  // Diamond part: (antecedent, consequent) pairs, deduplicated.
  std::vector<std::pair<InterventionSpec, InterventionSpec>> diamonds;

  // Diamonds whose consequent has no consistent outcome (<a>F). Such a
  // clause is unsatisfiable; it is kept, marked, so diagnostics can say why.
  std::vector<InterventionSpec> poisoned;

  bool is_poisoned() const { return !poisoned.empty(); }
};

// Antecedents mentioned anywhere in the clause.
std::set<InterventionSpec> clause_antecedents(const NormalClause& c);

// Lazy clause enumerator. Clauses with an inconsistent propositional part
// are skipped; poisoned clauses are yielded with their marker.
class NormalFormStream {
 public:
  explicit NormalFormStream(const Formula& f);
  ~NormalFormStream();
  NormalFormStream(NormalFormStream&&) noexcept;
  NormalFormStream& operator=(NormalFormStream&&) noexcept;

  std::optional<NormalClause> next();

  // Upper bound on the number of clauses this stream can yield.
  std::uint64_t candidate_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Eager wrapper around NormalFormStream.
std::vector<NormalClause> to_normal_form(const Formula& f);

// The clause rendered back as a formula (left-folded conjunction; an empty
// clause is T, an empty box disjunct set prints as [a] F, a poisoned diamond
// as <a> F).
Formula clause_to_formula(const NormalClause& c);

}  // namespace causim
