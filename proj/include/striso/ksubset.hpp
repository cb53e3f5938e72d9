#pragma once

#include <cstdint>
#include <vector>

#include "striso/bigint.hpp"
#include "striso/perm.hpp"

namespace striso {

// A partition of {0..ground_size-1} with a colour per part. Groups respect it
// when parts map onto parts of the same colour.
struct ColouredPartition {
  std::size_t ground_size = 0;
  std::vector<PointSet> parts;
  std::vector<int> colour;  // per part

  void validate() const;  // parts partition the ground set; throws otherwise
};

// All k-subsets of {0..m-1} in colex order (the canonical dense indexing).
std::vector<PointSet> ksubsets_colex(unsigned m, unsigned k);

// Colex rank of a sorted k-subset.
std::uint64_t colex_rank(const PointSet& subset);

// Transfer a coloured partition of the ground set to the set of k-subsets:
// parts collect subsets with identical per-part intersection sizes, colours
// collect the unordered intersection-size multisets per source colour class
// (colour classes ordered by their smallest part's smallest element). Any
// permutation respecting the input partition respects the output.
ColouredPartition induced_partition_on_ksubsets(const ColouredPartition& c, unsigned k);

// True iff every induced part has size at most (2/3) * C(m,k). Requires every
// input part of size <= alpha * m with alpha <= 2/3 (exact rational check).
bool check_part_bound(const ColouredPartition& c, unsigned k, const BigRational& alpha);

// Exact value of binom(k,a) * beta^a * (1-beta)^(k-a).
BigRational binom_term(unsigned k, unsigned a, const BigRational& beta);

// binom_term <= 1/2, evaluated in exact rational arithmetic.
bool binom_inequality(unsigned k, unsigned a, const BigRational& beta);

// (1/2) e^(2/ln m) < 2/3 with margin 1e-9; the size transfer needs this
// factor to shrink, which holds from m = 1046 on.
bool transfer_factor_ok(double m);

// Orbit/block decomposition of the k-subsets of the k'-subsets of a ground
// set, under a subgroup of its symmetric group. Each part is an orbit or, for
// orbits that the signature refinements split, a block.
struct JohnsonReport {
  enum class PartKind { Orbit, SupportBlock, FrequencyBlock };
  struct Part {
    PartKind kind;
    std::size_t size;
  };
  std::uint64_t universe_size = 0;  // |B| = C(C(m',k'), k)
  std::vector<Part> parts;
  std::size_t largest_part = 0;
  bool bound_asserted = false;  // m' >= 12: largest part must be <= |B|/2
  bool bound_holds = false;
};

// Throws budget_exhausted when |B| exceeds universe_cap.
JohnsonReport johnson_blocks(unsigned m_prime, unsigned k_prime, unsigned k,
                             const GeneratorSet& h_gens, std::uint64_t universe_cap = 100000);

}  // namespace striso
