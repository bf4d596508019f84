#pragma once

// Sparse bit tape: a total assignment of bits to indexed variables X1, X2, ...
// with finite support. Only the indices currently holding 1 are stored.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>

namespace causim {

using AtomIndex = std::int64_t;

class Tape {
 public:
  Tape() = default;

  static Tape from_ones(std::initializer_list<AtomIndex> ones) {
    Tape t;
    for (AtomIndex i : ones) t.set(i, true);
    return t;
  }

  bool get(AtomIndex i) const { return ones_.count(i) != 0; }

  void set(AtomIndex i, bool value) {
    if (value)
      ones_.insert(i);
    else
      ones_.erase(i);
  }

  // Indices currently set to 1, ascending. This is the canonical sparse
  // representation; tape ordering and printing both derive from it.
  const std::set<AtomIndex>& ones() const { return ones_; }

  bool all_zero() const { return ones_.empty(); }

  // "X1=1,X3=1"; the all-zero tape prints as the empty string.
  std::string to_string() const;

  auto operator<=>(const Tape&) const = default;

 private:
  std::set<AtomIndex> ones_;
};

}  // namespace causim
