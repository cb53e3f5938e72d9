#pragma once

#include <utility>
#include <vector>

#include "striso/cosets.hpp"

namespace striso {

// The product of symmetric groups on the symbol classes of x: exactly the
// permutations preserving every class. Returns the class partition (ordered
// by symbol) together with a chain for the product group.
std::pair<std::vector<std::pair<Symbol, PointSet>>, StabilizerChain> string_to_symmetric_product(
    const ColoredString& x);

// Rewrite an isomorphism problem over the coset G.sigma as one over the group
// G: returns y acted by sigma^{-1} and the coset c.sigma, so that a solution
// c of the shifted problem solves the original after the shift.
std::pair<ColoredString, PartialCoset> shift_coset(const PartialCoset& c, const ColoredString& y,
                                                   const Permutation& sigma);

// Smallest coset of a group containing the union of the parts. All non-empty
// parts must be cosets of one common subgroup (as at every call site); the
// representative is taken from the first non-empty part and normalized to the
// identity when the union is itself a group.
PartialCoset union_cosets(const std::vector<PartialCoset>& parts);

// A window-restricted isomorphism problem: find the elements of
// group . post whose window part maps x to y, then multiply by post.
struct WindowProblem {
  bool resolved = false;       // already answered (empty input or empty window)
  PartialCoset result;         // valid when resolved
  StabilizerChain group;
  ColoredString x, y;
  PointSet window;
  Permutation post;
};

// After solving a problem on window D1 with result c1 = G1 . s1, the combined
// problem on D1 u D2 becomes the problem on D2 over G1 with y shifted by
// s1^{-1}, post-multiplied by s1.
WindowProblem chain_windows(const PartialCoset& c1, const ColoredString& x,
                            const ColoredString& y, const PointSet& delta2);

// Given a G-invariant window `delta` and the solution of the restricted
// problem on it (a coset over the window domain, points re-indexed in sorted
// order), lift to the full-domain coset: the preimage of the restricted group
// times any preimage of the restricted representative.
PartialCoset lift_window_solution(const PartialCoset& inner, const StabilizerChain& G,
                                  const PointSet& delta);

// Restriction helpers for invariant windows (points re-indexed by sorted
// position within delta).
ActionMap restriction_action(const StabilizerChain& G, const PointSet& delta);
Permutation restrict_perm(const Permutation& g, const PointSet& delta);
ColoredString restrict_string(const ColoredString& x, const PointSet& delta);
StabilizerChain restrict_group(const StabilizerChain& G, const PointSet& delta);

}  // namespace striso
