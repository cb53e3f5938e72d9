#pragma once

#include <cstdint>

#include "striso/calculus.hpp"
#include "striso/cosets.hpp"
#include "striso/expr.hpp"
#include "striso/orbits.hpp"

namespace striso {

struct SolveOptions {
  // Groups of at most this many elements are handled by direct enumeration.
  std::uint64_t budget = 100000;
  // Cap on the number of union branches a block-quotient reduction may open.
  std::uint64_t branch_cap = 1000000;
};

struct SolveStats {
  std::size_t max_depth = 0;
  std::uint64_t brute_force = 0;
  std::uint64_t intransitive = 0;
  std::uint64_t imprimitive = 0;
  std::uint64_t alternating_base = 0;
  std::uint64_t symmetric_splits = 0;
  std::uint64_t union_branches = 0;   // includes branches that came back empty
  BigInt atom_count = 0;              // equals atom_count(expr)
};

struct SolveResult {
  PartialCoset coset;
  ExprPtr expr;
  SolveStats stats;
};

// The set of g in G mapping x to y, as a coset plus an expression that
// evaluates to it. Dispatch: direct enumeration for small groups, orbit
// splitting for intransitive groups, the alternating-group base case for the
// natural Alt/Sym actions, block-quotient unions for transitive imprimitive
// groups. Primitive groups that are neither alternating nor symmetric and
// exceed the budget raise budget_exhausted (this solver trades the
// quasipolynomial machinery for exactness at enumerable scale).
SolveResult iso(const StabilizerChain& G, const ColoredString& x, const ColoredString& y,
                const SolveOptions& opts = {});

// iso(G, x, x) with the representative normalized to the identity.
SolveResult aut(const StabilizerChain& G, const ColoredString& x, const SolveOptions& opts = {});

// Reference answer by plain enumeration of G; independent of the recursive
// path. Throws budget_exhausted when |G| > max_elements.
PartialCoset brute_force_iso(const StabilizerChain& G, const ColoredString& x,
                             const ColoredString& y, std::uint64_t max_elements = 1u << 22);

}  // namespace striso
