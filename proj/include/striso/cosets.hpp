#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "striso/chain.hpp"
#include "striso/perm.hpp"

namespace striso {

using Symbol = std::uint32_t;

// A string over a dense integer alphabet: one symbol per domain point.
struct ColoredString {
  std::vector<Symbol> symbols;

  ColoredString() = default;
  explicit ColoredString(std::vector<Symbol> s) : symbols(std::move(s)) {}
  static ColoredString constant(std::size_t n, Symbol a = 0) {
    return ColoredString(std::vector<Symbol>(n, a));
  }

  std::size_t degree() const { return symbols.size(); }
  Symbol operator()(Point p) const { return symbols[p]; }

  // The image string under g: result(g(r)) = this(r).
  ColoredString acted_by(const Permutation& g) const;

  // Symbol classes, ordered by symbol value; only nonempty classes, each
  // sorted ascending. Returned as (symbol, points) pairs.
  std::vector<std::pair<Symbol, PointSet>> classes() const;

  friend bool operator==(const ColoredString&, const ColoredString&) = default;
};

// True iff g maps x to y, i.e. x(r) = y(g(r)) for every point r.
bool maps_string(const Permutation& g, const ColoredString& x, const ColoredString& y);

// Same, with the condition imposed only on the window points.
bool maps_string_on(const Permutation& g, const ColoredString& x, const ColoredString& y,
                    const PointSet& window);

// Either the empty set or a coset (group, rep) = group . rep of a subgroup of
// Sym(n). Membership is rep-independent: g is in the set iff
// compose(g, rep^{-1}) is in the group.
class PartialCoset {
 public:
  static PartialCoset empty(std::size_t degree);
  static PartialCoset of(StabilizerChain group, Permutation rep);

  bool is_empty() const { return empty_; }
  std::size_t degree() const { return degree_; }
  const StabilizerChain& group() const;
  const Permutation& rep() const;
  BigInt size() const { return empty_ ? BigInt(0) : group_.order(); }

  bool member(const Permutation& g) const;

  // Right-multiply the coset by sigma.
  PartialCoset shifted(const Permutation& sigma) const;

  // Full expansion; throws budget_exhausted beyond max_elements.
  std::vector<Permutation> elements(std::uint64_t max_elements = 1u << 22) const;

 private:
  bool empty_ = true;
  std::size_t degree_ = 0;
  StabilizerChain group_;
  Permutation rep_;
};

}  // namespace striso
