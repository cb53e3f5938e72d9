#include "striso/ksubset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "striso/error.hpp"

namespace striso {

void ColouredPartition::validate() const {
  std::vector<bool> used(ground_size, false);
  if (parts.size() != colour.size())
    throw precondition_violation("one colour per part required");
  for (const auto& part : parts) {
    if (part.empty()) throw precondition_violation("empty part in coloured partition");
    for (Point p : part) {
      if (p >= ground_size || used[p])
        throw precondition_violation("parts must partition the ground set");
      used[p] = true;
    }
  }
  for (bool u : used)
    if (!u) throw precondition_violation("parts must cover the ground set");
}

std::vector<PointSet> ksubsets_colex(unsigned m, unsigned k) {
  std::vector<PointSet> out;
  if (k > m) return out;
  PointSet cur(k);
  for (unsigned i = 0; i < k; ++i) cur[i] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    // next in colex: bump the smallest position that can grow
    unsigned i = 0;
    while (i + 1 < k && cur[i] + 1 == cur[i + 1]) ++i;
    if (cur[i] + 1 >= m && i + 1 == k) break;
    ++cur[i];
    for (unsigned j = 0; j < i; ++j) cur[j] = j;
    if (cur[k - 1] >= m) break;
  }
  return out;
}

std::uint64_t colex_rank(const PointSet& subset) {
  BigInt r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    r += big_binomial(subset[i], static_cast<unsigned>(i + 1));
  return r.convert_to<std::uint64_t>();
}

ColouredPartition induced_partition_on_ksubsets(const ColouredPartition& c, unsigned k) {
  c.validate();
  const unsigned m = static_cast<unsigned>(c.ground_size);
  if (k < 1 || k > m) throw precondition_violation("k must satisfy 1 <= k <= |ground|");

  // colour classes ordered by the smallest element of their smallest part
  std::map<int, std::vector<std::size_t>> colour_parts;  // colour -> part indices
  for (std::size_t i = 0; i < c.parts.size(); ++i) colour_parts[c.colour[i]].push_back(i);
  std::vector<std::vector<std::size_t>> colour_classes;
  {
    std::vector<std::pair<Point, std::vector<std::size_t>>> keyed;
    for (auto& [col, idxs] : colour_parts) {
      Point smallest = c.ground_size;
      for (std::size_t i : idxs)
        smallest = std::min(smallest, *std::min_element(c.parts[i].begin(), c.parts[i].end()));
      keyed.emplace_back(smallest, idxs);
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, idxs] : keyed) colour_classes.push_back(idxs);
  }

  std::vector<int> part_of_point(m, -1);
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    for (Point p : c.parts[i]) part_of_point[p] = static_cast<int>(i);

  auto subsets = ksubsets_colex(m, k);
  using Vec = std::vector<unsigned>;
  using Sig = std::vector<Vec>;  // per colour class, sorted multiset of sizes
  std::map<Vec, std::pair<PointSet, Sig>> groups;  // intersection vector -> (members, signature)
  for (std::size_t si = 0; si < subsets.size(); ++si) {
    Vec inter(c.parts.size(), 0);
    for (Point p : subsets[si]) ++inter[part_of_point[p]];
    auto it = groups.find(inter);
    if (it == groups.end()) {
      Sig sig;
      for (const auto& cls : colour_classes) {
        Vec sizes;
        for (std::size_t pi : cls) sizes.push_back(inter[pi]);
        std::sort(sizes.begin(), sizes.end());
        sig.push_back(std::move(sizes));
      }
      it = groups.emplace(inter, std::make_pair(PointSet{}, std::move(sig))).first;
    }
    it->second.first.push_back(static_cast<Point>(si));
  }

  // canonical output order: parts sorted by smallest member
  std::vector<std::pair<PointSet, Sig>> items;
  for (auto& [vec, ps] : groups) items.push_back(ps);
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });

  // colours: dense ids by lexicographic order of signatures
  std::vector<Sig> keys;
  for (const auto& [pts, sig] : items) keys.push_back(sig);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  ColouredPartition out;
  out.ground_size = subsets.size();
  for (auto& [pts, sig] : items) {
    out.parts.push_back(pts);
    out.colour.push_back(static_cast<int>(
        std::lower_bound(keys.begin(), keys.end(), sig) - keys.begin()));
  }
  return out;
}

bool check_part_bound(const ColouredPartition& c, unsigned k, const BigRational& alpha) {
  c.validate();
  if (alpha > BigRational(2, 3))
    throw precondition_violation("alpha must be at most 2/3");
  for (const auto& part : c.parts)
    if (BigRational(part.size()) > alpha * BigRational(c.ground_size))
      throw precondition_violation("input part exceeds alpha * ground size");
  ColouredPartition induced = induced_partition_on_ksubsets(c, k);
  BigInt total = big_binomial(static_cast<unsigned>(c.ground_size), k);
  for (const auto& part : induced.parts)
    if (BigInt(part.size()) * 3 > total * 2) return false;
  return true;
}

BigRational binom_term(unsigned k, unsigned a, const BigRational& beta) {
  if (a < 1 || a > k) throw precondition_violation("need 1 <= a <= k");
  BigRational v(big_binomial(k, a));
  for (unsigned i = 0; i < a; ++i) v *= beta;
  BigRational complement = BigRational(1) - beta;
  for (unsigned i = 0; i < k - a; ++i) v *= complement;
  return v;
}

bool binom_inequality(unsigned k, unsigned a, const BigRational& beta) {
  return binom_term(k, a, beta) <= BigRational(1, 2);
}

bool transfer_factor_ok(double m) {
  return 0.5 * std::exp(2.0 / std::log(m)) < 2.0 / 3.0 - 1e-9;
}

namespace {

// Induced permutation of colex-indexed k-subsets of an n-point set, given a
// permutation of the points.
std::vector<std::uint32_t> induced_on_subsets(const std::vector<PointSet>& subsets,
                                              const std::vector<std::uint32_t>& point_image) {
  std::vector<std::uint32_t> img(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    PointSet moved;
    moved.reserve(subsets[i].size());
    for (Point p : subsets[i]) moved.push_back(point_image[p]);
    std::sort(moved.begin(), moved.end());
    img[i] = static_cast<std::uint32_t>(colex_rank(moved));
  }
  return img;
}

}  // namespace

JohnsonReport johnson_blocks(unsigned m_prime, unsigned k_prime, unsigned k,
                             const GeneratorSet& h_gens, std::uint64_t universe_cap) {
  if (h_gens.degree != m_prime) throw degree_mismatch(h_gens.degree, m_prime);
  if (m_prime > 64) throw precondition_violation("ground sets beyond 64 points not supported");
  if (k_prime < 2 || 2 * k_prime > m_prime)
    throw precondition_violation("need 2 <= k' <= m'/2");
  BigInt gamma_size = big_binomial(m_prime, k_prime);
  if (k < 2 || BigInt(2) * k > gamma_size)
    throw precondition_violation("need 2 <= k <= |Gamma|/2");
  if (gamma_size > universe_cap)
    throw budget_exhausted("middle layer of size " + gamma_size.str() + " exceeds cap " +
                           std::to_string(universe_cap));
  BigInt universe = big_binomial(gamma_size.convert_to<unsigned>(), k);
  if (universe > universe_cap)
    throw budget_exhausted("k-subset universe of size " + universe.str() +
                           " exceeds cap " + std::to_string(universe_cap));

  auto gamma = ksubsets_colex(m_prime, k_prime);  // k'-subsets of the ground set
  auto universe_sets = ksubsets_colex(static_cast<unsigned>(gamma.size()), k);

  // generator actions on gamma, then on the universe
  std::vector<std::vector<std::uint32_t>> gen_actions;
  for (const auto& g : h_gens.gens) {
    std::vector<std::uint32_t> pt(m_prime);
    for (unsigned i = 0; i < m_prime; ++i) pt[i] = g(i);
    auto on_gamma = induced_on_subsets(gamma, pt);
    gen_actions.push_back(induced_on_subsets(universe_sets, on_gamma));
  }

  // orbits of the universe
  std::vector<int> orbit_of(universe_sets.size(), -1);
  std::vector<std::vector<std::uint32_t>> orbit_members;
  for (std::uint32_t s = 0; s < universe_sets.size(); ++s) {
    if (orbit_of[s] >= 0) continue;
    int id = static_cast<int>(orbit_members.size());
    std::vector<std::uint32_t> members{s}, frontier{s};
    orbit_of[s] = id;
    while (!frontier.empty()) {
      std::uint32_t cur = frontier.back();
      frontier.pop_back();
      for (const auto& act : gen_actions) {
        std::uint32_t next = act[cur];
        if (orbit_of[next] < 0) {
          orbit_of[next] = id;
          members.push_back(next);
          frontier.push_back(next);
        }
      }
    }
    orbit_members.push_back(std::move(members));
  }

  // support A(x) of a universe element: all ground points of all its members
  auto support = [&](std::uint32_t u) {
    std::uint64_t mask = 0;
    for (Point gi : universe_sets[u])
      for (Point p : gamma[gi]) mask |= (std::uint64_t{1} << p);
    return mask;
  };
  // frequency signature A'(x): points whose containment count is the chosen
  // least frequent (smallest on ties) value
  auto frequency_set = [&](std::uint32_t u) {
    std::vector<unsigned> count(m_prime, 0);
    for (Point gi : universe_sets[u])
      for (Point p : gamma[gi]) ++count[p];
    std::map<unsigned, unsigned> freq;  // value -> how many points carry it
    for (unsigned p = 0; p < m_prime; ++p)
      if (count[p] > 0) ++freq[count[p]];
    unsigned best_value = 0, best_freq = 0;
    bool first = true;
    for (auto [value, f] : freq)
      if (first || f < best_freq) {
        first = false;
        best_value = value;
        best_freq = f;
      }
    std::uint64_t mask = 0;
    for (unsigned p = 0; p < m_prime; ++p)
      if (count[p] == best_value) mask |= (std::uint64_t{1} << p);
    return mask;
  };

  JohnsonReport report;
  report.universe_size = universe.convert_to<std::uint64_t>();
  for (const auto& members : orbit_members) {
    std::map<std::uint64_t, std::size_t> by_support;
    for (auto u : members) ++by_support[support(u)];
    if (by_support.size() > 1) {
      for (auto [mask, size] : by_support)
        report.parts.push_back({JohnsonReport::PartKind::SupportBlock, size});
      continue;
    }
    std::map<std::uint64_t, std::size_t> by_freq;
    for (auto u : members) ++by_freq[frequency_set(u)];
    if (by_freq.size() > 1) {
      for (auto [mask, size] : by_freq)
        report.parts.push_back({JohnsonReport::PartKind::FrequencyBlock, size});
      continue;
    }
    report.parts.push_back({JohnsonReport::PartKind::Orbit, members.size()});
  }
  for (const auto& part : report.parts)
    report.largest_part = std::max(report.largest_part, part.size);
  report.bound_asserted = (m_prime >= 12);
  report.bound_holds = (2 * report.largest_part <= report.universe_size);
  if (report.bound_asserted && !report.bound_holds)
    throw precondition_violation("orbit/block part exceeds half the universe");
  return report;
}

}  // namespace striso
