#pragma once

#include <optional>
#include <vector>

#include "striso/chain.hpp"
#include "striso/perm.hpp"

namespace striso {

// The partition of {0,...,n-1} into orbits of a generated group. Canonical:
// orbits are sorted by their minimum element and their points are ascending.
struct OrbitPartition {
  std::size_t degree = 0;
  std::vector<int> orbit_id;            // per point
  std::vector<PointSet> orbit_list;

  bool transitive() const { return orbit_list.size() == 1; }
};

OrbitPartition orbits(const GeneratorSet& gens);

// A group-invariant partition of the whole domain into equal-size blocks.
struct BlockSystem {
  std::size_t degree = 0;
  std::vector<int> block_id;            // per point
  std::vector<PointSet> blocks;         // sorted by minimum element

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
};

// For a transitive group: the canonical coarsest nontrivial invariant
// partition, i.e. the one with maximal block size on which the induced action
// is primitive; among those, the one whose block containing point 0 is
// lexicographically smallest. Returns nullopt when the action is primitive.
// Throws precondition_violation on intransitive input.
std::optional<BlockSystem> minimal_blocks(const GeneratorSet& gens);

// The induced action on the blocks of a G-invariant system, as an ActionMap
// over block indices. Throws precondition_violation if some generator does
// not map blocks onto blocks.
ActionMap block_action(const BlockSystem& blocks);

// Kernel of the induced action on blocks. Validates invariance.
StabilizerChain block_system_stabilizer(const StabilizerChain& chain, const BlockSystem& blocks);

}  // namespace striso
