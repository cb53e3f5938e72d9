#include "striso/orbits.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace striso {

OrbitPartition orbits(const GeneratorSet& gens) {
  const std::size_t n = gens.degree;
  OrbitPartition out;
  out.degree = n;
  out.orbit_id.assign(n, -1);
  // Marked breadth-first sweep: grow each orbit from its smallest unvisited
  // point, keeping an examined/unexamined frontier.
  for (Point start = 0; start < n; ++start) {
    if (out.orbit_id[start] >= 0) continue;
    int id = static_cast<int>(out.orbit_list.size());
    PointSet orbit{start};
    out.orbit_id[start] = id;
    std::deque<Point> unexamined{start};
    while (!unexamined.empty()) {
      Point p = unexamined.front();
      unexamined.pop_front();
      for (const auto& g : gens.gens) {
        Point q = g(p);
        if (out.orbit_id[q] < 0) {
          out.orbit_id[q] = id;
          orbit.push_back(q);
          unexamined.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbit_list.push_back(std::move(orbit));
  }
  return out;
}

namespace {

// Partition of {0..r-1} encoded as a normalized class-id vector (ids appear in
// first-occurrence order).
using Labels = std::vector<int>;

Labels normalize(const std::vector<int>& raw) {
  Labels out(raw.size(), -1);
  std::map<int, int> remap;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, fresh] = remap.try_emplace(raw[i], static_cast<int>(remap.size()));
    (void)fresh;
    out[i] = it->second;
  }
  return out;
}

int class_count(const Labels& l) {
  int m = -1;
  for (int v : l) m = std::max(m, v);
  return m + 1;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Smallest invariant equivalence relation joining points a and b under the
// given action: close the pair graph under all generators.
Labels pair_closure(const std::vector<Labels>& action_gens, std::size_t r, int a, int b) {
  UnionFind uf(r);
  std::deque<std::pair<int, int>> work;
  uf.merge(a, b);
  work.emplace_back(a, b);
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    for (const auto& g : action_gens) {
      int gp = g[p], gq = g[q];
      if (uf.merge(gp, gq)) work.emplace_back(gp, gq);
    }
  }
  std::vector<int> raw(r);
  for (std::size_t i = 0; i < r; ++i) raw[i] = uf.find(static_cast<int>(i));
  return normalize(raw);
}

// Induced generator action on the classes of `part`.
std::vector<Labels> quotient_action(const std::vector<Labels>& action_gens, const Labels& part) {
  int r = class_count(part);
  std::vector<int> rep_of(r, -1);
  for (std::size_t i = 0; i < part.size(); ++i)
    if (rep_of[part[i]] < 0) rep_of[part[i]] = static_cast<int>(i);
  std::vector<Labels> out;
  for (const auto& g : action_gens) {
    Labels q(r);
    for (int c = 0; c < r; ++c) q[c] = part[g[rep_of[c]]];
    out.push_back(std::move(q));
  }
  return out;
}

// Compose: class of original point under the coarsening `coarse` of the
// quotient classes of `fine`.
Labels pull_back(const Labels& fine, const Labels& coarse) {
  Labels out(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) out[i] = coarse[fine[i]];
  return normalize(out);
}

struct BlockSearch {
  std::size_t n;
  std::vector<Labels> gens;
  std::set<Labels> visited;
  std::optional<Labels> best;
  std::size_t best_size = 0;
  PointSet best_block0;

  PointSet block_of_zero(const Labels& sys) const {
    PointSet b;
    for (std::size_t i = 0; i < n; ++i)
      if (sys[i] == sys[0]) b.push_back(static_cast<Point>(i));
    return b;
  }

  void offer(const Labels& sys) {
    PointSet b0 = block_of_zero(sys);
    if (!best || b0.size() > best_size || (b0.size() == best_size && b0 < best_block0)) {
      best = sys;
      best_size = b0.size();
      best_block0 = std::move(b0);
    }
  }

  // Walk every chain of pair-closure coarsenings; leaves are the systems with
  // primitive induced action. Memoized on the normalized partition.
  void dfs(const Labels& sys) {
    if (!visited.insert(sys).second) return;
    auto qgens = quotient_action(gens, sys);
    std::size_t r = static_cast<std::size_t>(class_count(sys));
    bool leaf = true;
    for (std::size_t x = 1; x < r; ++x) {
      Labels closure = pair_closure(qgens, r, 0, static_cast<int>(x));
      if (class_count(closure) <= 1) continue;  // coarsening collapsed everything
      leaf = false;
      dfs(pull_back(sys, closure));
    }
    if (leaf && class_count(sys) < static_cast<int>(n)) offer(sys);
  }
};

}  // namespace

std::optional<BlockSystem> minimal_blocks(const GeneratorSet& gens) {
  OrbitPartition op = orbits(gens);
  if (!op.transitive())
    throw precondition_violation("minimal_blocks requires a transitive action");
  const std::size_t n = gens.degree;
  if (n <= 2) return std::nullopt;  // only trivial partitions exist

  BlockSearch search;
  search.n = n;
  for (const auto& g : gens.gens) {
    Labels l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(g(static_cast<Point>(i)));
    search.gens.push_back(std::move(l));
  }
  Labels singletons(n);
  for (std::size_t i = 0; i < n; ++i) singletons[i] = static_cast<int>(i);
  search.dfs(singletons);
  if (!search.best) return std::nullopt;

  const Labels& sys = *search.best;
  BlockSystem out;
  out.degree = n;
  out.block_id.assign(n, -1);
  std::vector<PointSet> raw(class_count(sys));
  for (std::size_t i = 0; i < n; ++i) raw[sys[i]].push_back(static_cast<Point>(i));
  std::sort(raw.begin(), raw.end(),
            [](const PointSet& a, const PointSet& b) { return a.front() < b.front(); });
  out.blocks = std::move(raw);
  for (std::size_t b = 0; b < out.blocks.size(); ++b)
    for (Point p : out.blocks[b]) out.block_id[p] = static_cast<int>(b);
  return out;
}

ActionMap block_action(const BlockSystem& blocks) {
  ActionMap hom;
  hom.image_degree = blocks.blocks.size();
  // copy the tables we need so the map owns its data
  auto block_id = blocks.block_id;
  auto firsts = std::vector<Point>();
  for (const auto& b : blocks.blocks) firsts.push_back(b.front());
  auto sizes = std::vector<std::size_t>();
  for (const auto& b : blocks.blocks) sizes.push_back(b.size());
  auto block_points = blocks.blocks;
  hom.apply = [block_id, firsts, block_points](const Permutation& g) {
    std::vector<Point> img(firsts.size());
    for (std::size_t b = 0; b < firsts.size(); ++b) {
      int target = block_id[g(firsts[b])];
      // every point of the block must land in the same target block
      for (Point p : block_points[b])
        if (block_id[g(p)] != target)
          throw precondition_violation("partition is not invariant under the group");
      img[b] = static_cast<Point>(target);
    }
    return Permutation(std::move(img));
  };
  return hom;
}

StabilizerChain block_system_stabilizer(const StabilizerChain& chain, const BlockSystem& blocks) {
  if (chain.degree() != blocks.degree) throw degree_mismatch(chain.degree(), blocks.degree);
  ActionMap hom = block_action(blocks);
  for (const auto& g : chain.generators()) hom.apply(g);  // validates invariance
  StabilizerChain trivial = schreier_sims(GeneratorSet(blocks.blocks.size(), {}));
  return preimage_subgroup(chain, hom, trivial);
}

}  // namespace striso
