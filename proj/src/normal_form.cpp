// Lazy enumeration of the conditional disjunctive normal form.
//
// The input is first brought to negation normal form, then lowered to an
// enumeration tree whose leaves are clause ingredients:
//
//   - bit literals (the propositional part),
//   - box atoms, with the consequent split over top-level conjunctions and
//     each piece pre-lowered to its set of consistent outcome clauses,
//   - diamond atoms, split over the consequent's outcome clauses (one clause
//     of the DNF per outcome), or a poison marker when there are none.
//
// And-nodes multiply alternatives, or-nodes add them, so each clause has a
// mixed-radix index and clause k is decoded on demand without materializing
// the whole (worst-case exponential) disjunction.

#include "causim/normal_form.hpp"

#include <algorithm>
#include <cassert>

namespace causim {

namespace {

// Consistent outcome clauses of a propositional formula in NNF (its DNF with
// contradictory disjuncts dropped and the rest sorted and deduplicated).
std::vector<InterventionSpec> outcome_clauses(const PropFormula& p) {
  switch (p.kind()) {
    case PropFormula::Kind::Atom:
      return {InterventionSpec({Literal{p.atom_value(), true}})};
    case PropFormula::Kind::Top:
      return {InterventionSpec()};
    case PropFormula::Kind::Bottom:
      return {};
    case PropFormula::Kind::Not: {
      assert(p.operand().kind() == PropFormula::Kind::Atom);
      return {InterventionSpec({Literal{p.operand().atom_value(), false}})};
    }
    case PropFormula::Kind::Or: {
      auto l = outcome_clauses(p.lhs());
      auto r = outcome_clauses(p.rhs());
      l.insert(l.end(), r.begin(), r.end());
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      return l;
    }
    case PropFormula::Kind::And: {
      auto l = outcome_clauses(p.lhs());
      auto r = outcome_clauses(p.rhs());
      std::vector<InterventionSpec> out;
      for (const auto& a : l)
        for (const auto& b : r)
          if (auto merged = conjoin(a, b)) out.push_back(std::move(*merged));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  return {};
}

void top_conjuncts(const PropFormula& p, std::vector<PropFormula>& out) {
  if (p.kind() == PropFormula::Kind::And) {
    top_conjuncts(p.lhs(), out);
    top_conjuncts(p.rhs(), out);
  } else {
    out.push_back(p);
  }
}

struct EnumNode {
  enum class Kind { And, Or, True, BitLit, Box, Diamond, PoisonedDiamond };

  Kind kind;
  std::vector<EnumNode> children;               // And / Or
  Literal lit{Atom(1), true};                   // BitLit
  InterventionSpec antecedent;                  // Box / Diamond / PoisonedDiamond
  std::vector<InterventionSpec> box_disjuncts;  // Box
  InterventionSpec diamond_consequent;          // Diamond
  std::uint64_t count = 0;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

EnumNode leaf(EnumNode::Kind k) {
  EnumNode n;
  n.kind = k;
  n.count = 1;
  return n;
}

// Requires f in negation normal form.
EnumNode lower(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      EnumNode n = leaf(EnumNode::Kind::BitLit);
      n.lit = Literal{f.atom_value(), true};
      return n;
    }
    case Formula::Kind::Not: {
      assert(f.operand().kind() == Formula::Kind::Atom);
      EnumNode n = leaf(EnumNode::Kind::BitLit);
      n.lit = Literal{f.operand().atom_value(), false};
      return n;
    }
    case Formula::Kind::Top:
      return leaf(EnumNode::Kind::True);
    case Formula::Kind::Bottom: {
      EnumNode n;  // or-node with no alternatives: no clause contains F
      n.kind = EnumNode::Kind::Or;
      n.count = 0;
      return n;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      EnumNode n;
      n.kind = f.kind() == Formula::Kind::And ? EnumNode::Kind::And : EnumNode::Kind::Or;
      n.children.push_back(lower(f.lhs()));
      n.children.push_back(lower(f.rhs()));
      if (n.kind == EnumNode::Kind::And) {
        n.count = saturating_mul(n.children[0].count, n.children[1].count);
      } else {
        n.count = saturating_add(n.children[0].count, n.children[1].count);
      }
      return n;
    }
    case Formula::Kind::Cond: {
      const CondAtom& c = f.cond_atom();
      if (c.modality == Modality::Box) {
        // [a](b1 & b2) splits into [a]b1 & [a]b2 before each piece is
        // lowered to its outcome clauses.
        std::vector<PropFormula> pieces;
        top_conjuncts(c.consequent, pieces);
        std::vector<EnumNode> boxes;
        for (const PropFormula& piece : pieces) {
          EnumNode b = leaf(EnumNode::Kind::Box);
          b.antecedent = c.antecedent;
          b.box_disjuncts = outcome_clauses(piece);
          boxes.push_back(std::move(b));
        }
        if (boxes.size() == 1) return boxes.front();
        EnumNode n;
        n.kind = EnumNode::Kind::And;
        n.children = std::move(boxes);
        n.count = 1;
        for (const EnumNode& child : n.children) n.count = saturating_mul(n.count, child.count);
        return n;
      }
      // <a>(b1 | b2) splits at the clause level: one alternative per
      // consistent outcome. No outcome at all poisons the clause.
      std::vector<InterventionSpec> outcomes = outcome_clauses(c.consequent);
      if (outcomes.empty()) {
        EnumNode n = leaf(EnumNode::Kind::PoisonedDiamond);
        n.antecedent = c.antecedent;
        return n;
      }
      EnumNode n;
      n.kind = EnumNode::Kind::Or;
      for (InterventionSpec& o : outcomes) {
        EnumNode d = leaf(EnumNode::Kind::Diamond);
        d.antecedent = c.antecedent;
        d.diamond_consequent = std::move(o);
        n.children.push_back(std::move(d));
      }
      n.count = n.children.size();
      return n;
    }
  }
  throw std::logic_error("unreachable");
}

// Collects the leaves selected by clause index k (mixed radix: and-nodes
// consume digits child by child, or-nodes pick the child whose range
// contains k).
void decode(const EnumNode& n, std::uint64_t k, std::vector<const EnumNode*>& leaves) {
  switch (n.kind) {
    case EnumNode::Kind::True:
      return;
    case EnumNode::Kind::BitLit:
    case EnumNode::Kind::Box:
    case EnumNode::Kind::Diamond:
    case EnumNode::Kind::PoisonedDiamond:
      leaves.push_back(&n);
      return;
    case EnumNode::Kind::And:
      for (const EnumNode& child : n.children) {
        decode(child, k % child.count, leaves);
        k /= child.count;
      }
      return;
    case EnumNode::Kind::Or:
      for (const EnumNode& child : n.children) {
        if (k < child.count) {
          decode(child, k, leaves);
          return;
        }
        k -= child.count;
      }
      return;
  }
}

std::optional<NormalClause> assemble(const std::vector<const EnumNode*>& leaves) {
  NormalClause clause;
  std::vector<Literal> bits;
  for (const EnumNode* leaf : leaves) {
    switch (leaf->kind) {
      case EnumNode::Kind::BitLit:
        bits.push_back(leaf->lit);
        break;
      case EnumNode::Kind::Box: {
        auto& sets = clause.boxes[leaf->antecedent];
        if (std::find(sets.begin(), sets.end(), leaf->box_disjuncts) == sets.end())
          sets.push_back(leaf->box_disjuncts);
        break;
      }
      case EnumNode::Kind::Diamond: {
        auto d = std::make_pair(leaf->antecedent, leaf->diamond_consequent);
        if (std::find(clause.diamonds.begin(), clause.diamonds.end(), d) == clause.diamonds.end())
          clause.diamonds.push_back(std::move(d));
        break;
      }
      case EnumNode::Kind::PoisonedDiamond:
        if (std::find(clause.poisoned.begin(), clause.poisoned.end(), leaf->antecedent) == clause.poisoned.end())
          clause.poisoned.push_back(leaf->antecedent);
        break;
      default:
        break;
    }
  }
  auto pi = InterventionSpec::normalized(std::move(bits));
  if (!pi) return std::nullopt;  // contradictory propositional part
  clause.pi = std::move(*pi);
  std::sort(clause.diamonds.begin(), clause.diamonds.end());
  return clause;
}

}  // namespace

std::set<InterventionSpec> clause_antecedents(const NormalClause& c) {
  std::set<InterventionSpec> out;
  for (const auto& [a, _] : c.boxes) out.insert(a);
  for (const auto& [a, _] : c.diamonds) out.insert(a);
  for (const auto& a : c.poisoned) out.insert(a);
  return out;
}

struct NormalFormStream::Impl {
  EnumNode root;
  std::uint64_t index = 0;
};

NormalFormStream::NormalFormStream(const Formula& f) : impl_(std::make_unique<Impl>()) {
  impl_->root = lower(to_nnf(f));
}

NormalFormStream::~NormalFormStream() = default;
NormalFormStream::NormalFormStream(NormalFormStream&&) noexcept = default;
NormalFormStream& NormalFormStream::operator=(NormalFormStream&&) noexcept = default;

std::uint64_t NormalFormStream::candidate_count() const { return impl_->root.count; }

std::optional<NormalClause> NormalFormStream::next() {
  while (impl_->index < impl_->root.count) {
    std::vector<const EnumNode*> leaves;
    decode(impl_->root, impl_->index++, leaves);
    if (auto clause = assemble(leaves)) return clause;
  }
  return std::nullopt;
}

std::vector<NormalClause> to_normal_form(const Formula& f) {
  std::vector<NormalClause> out;
  NormalFormStream stream(f);
  while (auto c = stream.next()) out.push_back(std::move(*c));
  return out;
}

Formula clause_to_formula(const NormalClause& c) {
  std::optional<Formula> acc;
  auto add = [&](Formula f) {
    if (acc) {
      acc = Formula::conj(std::move(*acc), std::move(f));
    } else {
      acc = std::move(f);
    }
  };
  for (const Literal& l : c.pi.literals())
    add(l.positive ? Formula::atom(l.atom) : Formula::negation(Formula::atom(l.atom)));
  for (const auto& [antecedent, sets] : c.boxes) {
    for (const auto& disjuncts : sets) {
      std::optional<PropFormula> body;
      for (const InterventionSpec& d : disjuncts) {
        PropFormula piece = d.to_prop();
        body = body ? PropFormula::disj(std::move(*body), std::move(piece)) : std::move(piece);
      }
      add(Formula::box(antecedent, body ? std::move(*body) : PropFormula::bottom()));
    }
  }
  for (const auto& [antecedent, consequent] : c.diamonds)
    add(Formula::diamond(antecedent, consequent.to_prop()));
  for (const InterventionSpec& antecedent : c.poisoned)
    add(Formula::diamond(antecedent, PropFormula::bottom()));
  return acc ? std::move(*acc) : Formula::top();
}

}  // namespace causim
