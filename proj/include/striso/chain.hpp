#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "striso/bigint.hpp"
#include "striso/perm.hpp"

namespace striso {

// Base points, strong generators and per-level transversals for a permutation
// group (a BSGS). Built once by schreier_sims(); immutable afterwards and safe
// to share between threads.
//
// Level i holds the group G_i of chain elements fixing the first i base
// points; its transversal has one representative per point of the orbit of
// base(i) under G_i, and G_{i+1} is the stabilizer of base(i) in G_i.
class StabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> gens;  // generators of this level's group
    PointSet orbit;                 // sorted ascending; always contains base_point
    std::vector<Permutation> transversal;      // rep[j] maps base_point to orbit[j]
    std::vector<Permutation> transversal_inv;  // cached inverses
    std::vector<int> orbit_index;              // point -> position in orbit, or -1
  };

  StabilizerChain() = default;

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  PointSet base() const;

  BigInt order() const;
  bool is_trivial() const { return order() == 1; }

  // Generators of the whole group (the level-0 strong generators). Empty for
  // the trivial group.
  const std::vector<Permutation>& generators() const;
  GeneratorSet generator_set() const { return GeneratorSet(degree_, generators()); }

  bool contains(const Permutation& g) const;

  // Sift g through the chain starting at `from`: returns the residue and the
  // level at which sifting stopped (levels_.size() when fully sifted).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;

  friend StabilizerChain schreier_sims(const GeneratorSet&, const PointSet&);

 private:
  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::vector<Permutation> no_gens_;  // returned for level-free chains
};

// Deterministic Schreier-Sims. The base is the first degree-1 points of
// base_order (natural order 0,1,2,... by default), so chains are reproducible.
// The resulting strong generator set has at most n^2 elements.
StabilizerChain schreier_sims(const GeneratorSet& gens);
StabilizerChain schreier_sims(const GeneratorSet& gens, const PointSet& base_order);

// Streams every element of the group exactly once, as the product of one
// transversal representative per level. Lazy: callers should budget-check
// order() first.
class ElementStream {
 public:
  explicit ElementStream(const StabilizerChain& chain);
  std::optional<Permutation> next();

 private:
  const StabilizerChain& chain_;
  std::vector<std::size_t> index_;
  std::vector<Permutation> suffix_;  // suffix_[i] = product of reps at levels >= i
  bool done_ = false;
  bool first_ = true;
  void refresh(std::size_t from);
};

// All elements of the group; throws budget_exhausted if the order exceeds max_elements.
std::vector<Permutation> all_elements(const StabilizerChain& chain,
                                      std::uint64_t max_elements = 1u << 22);

// The subgroup H = {g in G | test(g)} together with one representative per
// right coset of H in G. `test` must define a subgroup with index at most
// index_bound; exceeding the bound throws index_bound_exceeded.
std::pair<StabilizerChain, std::vector<Permutation>> subgroup_by_test(
    const StabilizerChain& chain, const std::function<bool(const Permutation&)>& test,
    std::uint64_t index_bound);

// An action map G -> Sym(image_degree), given pointwise; must restrict to a
// homomorphism on the group it is used with.
struct ActionMap {
  std::size_t image_degree = 0;
  std::function<Permutation(const Permutation&)> apply;
};

// Shared machinery for computing preimages under an action map: internally a
// chain over the disjoint union of domain and image, image points first.
class ActionPreimage {
 public:
  ActionPreimage(const StabilizerChain& chain, const ActionMap& hom);

  // Generators of the kernel of the action, as permutations of the domain.
  GeneratorSet kernel_generators() const;

  // Some g in G with hom(g) = tau, or nullopt if tau is not in the image.
  std::optional<Permutation> element_mapping_to(const Permutation& tau) const;

  // The full preimage of `target` (a subgroup of the image). Throws
  // precondition_violation if some generator of target is outside the image.
  StabilizerChain preimage_subgroup(const StabilizerChain& target) const;

 private:
  std::size_t n_ = 0;   // domain degree
  std::size_t n2_ = 0;  // image degree
  StabilizerChain combined_;
};

// Convenience wrappers over ActionPreimage.
StabilizerChain preimage_subgroup(const StabilizerChain& chain, const ActionMap& hom,
                                  const StabilizerChain& target);
std::optional<Permutation> preimage_element(const StabilizerChain& chain, const ActionMap& hom,
                                            const Permutation& tau);

// The subgroup fixing every point of S, via Schreier-Sims with S-first base.
StabilizerChain pointwise_stabilizer(const StabilizerChain& chain, const PointSet& S);

}  // namespace striso
