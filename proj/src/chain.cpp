#include "striso/chain.hpp"

#include <algorithm>
#include <deque>

namespace striso {

namespace {

// Mutable chain state during construction.
struct Builder {
  std::size_t n;
  std::vector<StabilizerChain::Level> levels;

  explicit Builder(std::size_t degree, const PointSet& base_order) : n(degree) {
    // One level per base point except the last; a permutation fixing n-1
    // points is the identity.
    std::size_t k = degree > 0 ? degree - 1 : 0;
    levels.resize(k);
    for (std::size_t i = 0; i < k; ++i) levels[i].base_point = base_order[i];
  }

  void recompute_transversal(std::size_t i) {
    auto& lv = levels[i];
    std::vector<Permutation> rep(n);
    std::vector<bool> have(n, false);
    std::deque<Point> work;
    rep[lv.base_point] = Permutation::identity(n);
    have[lv.base_point] = true;
    work.push_back(lv.base_point);
    while (!work.empty()) {
      Point p = work.front();
      work.pop_front();
      for (const auto& s : lv.gens) {
        Point q = s(p);
        if (!have[q]) {
          have[q] = true;
          rep[q] = compose(rep[p], s);
          work.push_back(q);
        }
      }
    }
    lv.orbit.clear();
    lv.transversal.clear();
    lv.transversal_inv.clear();
    lv.orbit_index.assign(n, -1);
    for (Point p = 0; p < n; ++p) {
      if (!have[p]) continue;
      lv.orbit_index[p] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(p);
      lv.transversal.push_back(rep[p]);
      lv.transversal_inv.push_back(rep[p].inverse());
    }
  }

  // Sift g through levels from..end; returns residue and stopping level.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      if (g.is_identity()) return {std::move(g), levels.size()};
      const auto& lv = levels[i];
      Point p = g(lv.base_point);
      int pos = lv.orbit_index[p];
      if (pos < 0) return {std::move(g), i};
      g = compose(g, lv.transversal_inv[pos]);
    }
    return {std::move(g), levels.size()};
  }

  // Make level i complete: every Schreier generator of level i must sift to
  // identity through the deeper levels. Assumes deeper levels are complete.
  void complete(std::size_t i) {
    recompute_transversal(i);
    const auto& lv = levels[i];
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      for (std::size_t si = 0; si < lv.gens.size(); ++si) {
        Point p = lv.orbit[oi];
        const Permutation& s = lv.gens[si];
        int qpos = lv.orbit_index[s(p)];
        Permutation schreier =
            compose(compose(lv.transversal[oi], s), lv.transversal_inv[qpos]);
        if (schreier.is_identity()) continue;
        auto [residue, j] = sift(std::move(schreier), i + 1);
        if (residue.is_identity()) continue;
        if (j >= levels.size())
          throw precondition_violation("non-identity residue fixing every base point");
        std::size_t top = std::min(j, levels.size() - 1);
        for (std::size_t l = i + 1; l <= top; ++l) levels[l].gens.push_back(residue);
        for (std::size_t l = top; l >= i + 1; --l) complete(l);
      }
    }
  }

  // Replace each level's generators by the transversal representatives of all
  // levels at or below it. These generate the same groups (every element is a
  // unique product of representatives) and there are at most n^2 of them.
  void rebuild_strong_generators() {
    std::vector<Permutation> suffix;
    for (std::size_t i = levels.size(); i-- > 0;) {
      for (std::size_t j = 0; j < levels[i].transversal.size(); ++j)
        if (!levels[i].transversal[j].is_identity())
          suffix.push_back(levels[i].transversal[j]);
      levels[i].gens = suffix;
    }
  }
};

}  // namespace

PointSet StabilizerChain::base() const {
  PointSet b;
  for (const auto& lv : levels_) b.push_back(lv.base_point);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt r = 1;
  for (const auto& lv : levels_) r *= static_cast<unsigned>(lv.orbit.size());
  return r;
}

const std::vector<Permutation>& StabilizerChain::generators() const {
  return levels_.empty() ? no_gens_ : levels_.front().gens;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t from) const {
  if (g.degree() != degree_) throw degree_mismatch(g.degree(), degree_);
  for (std::size_t i = from; i < levels_.size(); ++i) {
    if (g.is_identity()) return {std::move(g), levels_.size()};
    const auto& lv = levels_[i];
    int pos = lv.orbit_index[g(lv.base_point)];
    if (pos < 0) return {std::move(g), i};
    g = compose(g, lv.transversal_inv[pos]);
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  auto [residue, lvl] = sift(g);
  (void)lvl;
  return residue.is_identity();
}

StabilizerChain schreier_sims(const GeneratorSet& gens) {
  PointSet natural(gens.degree);
  for (std::size_t i = 0; i < gens.degree; ++i) natural[i] = static_cast<Point>(i);
  return schreier_sims(gens, natural);
}

StabilizerChain schreier_sims(const GeneratorSet& gens, const PointSet& base_order) {
  if (base_order.size() != gens.degree)
    throw precondition_violation("base order must list every point exactly once");
  {
    std::vector<bool> seen(gens.degree, false);
    for (Point p : base_order) {
      if (p >= gens.degree || seen[p])
        throw precondition_violation("base order must list every point exactly once");
      seen[p] = true;
    }
  }

  Builder b(gens.degree, base_order);
  if (!b.levels.empty()) {
    for (const auto& g : gens.gens) {
      if (g.degree() != gens.degree) throw degree_mismatch(g.degree(), gens.degree);
      if (!g.is_identity()) b.levels[0].gens.push_back(g);
    }
    // Seed deeper levels with the generators already fixing the base prefix,
    // then complete bottom-up.
    for (std::size_t i = 0; i + 1 < b.levels.size(); ++i)
      for (const auto& g : b.levels[i].gens)
        if (g(b.levels[i].base_point) == b.levels[i].base_point)
          b.levels[i + 1].gens.push_back(g);
    for (std::size_t i = b.levels.size(); i-- > 0;) b.complete(i);
    b.rebuild_strong_generators();
  }

  StabilizerChain chain;
  chain.degree_ = gens.degree;
  chain.levels_ = std::move(b.levels);
  return chain;
}

ElementStream::ElementStream(const StabilizerChain& chain) : chain_(chain) {
  index_.assign(chain.levels().size(), 0);
  suffix_.assign(chain.levels().size() + 1, Permutation::identity(chain.degree()));
  refresh(chain.levels().size());
}

void ElementStream::refresh(std::size_t from) {
  for (std::size_t i = from; i-- > 0;)
    suffix_[i] = compose(suffix_[i + 1], chain_.levels()[i].transversal[index_[i]]);
}

std::optional<Permutation> ElementStream::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return suffix_.front();
  }
  // Odometer over transversal indices, least significant at level 0.
  std::size_t i = 0;
  for (; i < index_.size(); ++i) {
    if (++index_[i] < chain_.levels()[i].transversal.size()) break;
    index_[i] = 0;
  }
  if (i == index_.size()) {
    done_ = true;
    return std::nullopt;
  }
  refresh(i + 1);
  return suffix_.front();
}

std::vector<Permutation> all_elements(const StabilizerChain& chain, std::uint64_t max_elements) {
  if (chain.order() > max_elements)
    throw budget_exhausted("group order " + chain.order().str() + " exceeds element budget " +
                           std::to_string(max_elements));
  std::vector<Permutation> out;
  ElementStream stream(chain);
  while (auto g = stream.next()) out.push_back(std::move(*g));
  return out;
}

std::pair<StabilizerChain, std::vector<Permutation>> subgroup_by_test(
    const StabilizerChain& chain, const std::function<bool(const Permutation&)>& test,
    std::uint64_t index_bound) {
  const std::size_t n = chain.degree();
  std::vector<Permutation> reps{Permutation::identity(n)};
  std::vector<Permutation> reps_inv{Permutation::identity(n)};
  std::vector<Permutation> subgens;
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t ri = work.front();
    work.pop_front();
    for (const auto& s : chain.generators()) {
      Permutation w = compose(reps[ri], s);
      bool placed = false;
      for (std::size_t j = 0; j < reps.size(); ++j) {
        Permutation u = compose(w, reps_inv[j]);
        if (test(u)) {
          if (!u.is_identity()) subgens.push_back(std::move(u));
          placed = true;
          break;
        }
      }
      if (!placed) {
        if (reps.size() >= index_bound)
          throw index_bound_exceeded("coset count exceeds index bound " +
                                     std::to_string(index_bound));
        reps_inv.push_back(w.inverse());
        reps.push_back(std::move(w));
        work.push_back(reps.size() - 1);
      }
    }
  }
  StabilizerChain sub = schreier_sims(GeneratorSet(n, std::move(subgens)));
  if (sub.order() * reps.size() != chain.order())
    throw precondition_violation("test does not define a subgroup of the stated index");
  return {std::move(sub), std::move(reps)};
}

ActionPreimage::ActionPreimage(const StabilizerChain& chain, const ActionMap& hom)
    : n_(chain.degree()), n2_(hom.image_degree) {
  std::vector<Permutation> combined_gens;
  for (const auto& g : chain.generators()) {
    Permutation image = hom.apply(g);
    if (image.degree() != n2_) throw degree_mismatch(image.degree(), n2_);
    std::vector<Point> img(n_ + n2_);
    for (std::size_t i = 0; i < n_; ++i) img[i] = g(static_cast<Point>(i));
    for (std::size_t j = 0; j < n2_; ++j)
      img[n_ + j] = static_cast<Point>(n_) + image(static_cast<Point>(j));
    combined_gens.emplace_back(std::move(img));
  }
  // Image points first in the base, so the kernel is the deepest chain group
  // and prescribed image points can be matched by walking the top levels.
  PointSet base_order;
  for (std::size_t j = 0; j < n2_; ++j) base_order.push_back(static_cast<Point>(n_ + j));
  for (std::size_t i = 0; i < n_; ++i) base_order.push_back(static_cast<Point>(i));
  combined_ = schreier_sims(GeneratorSet(n_ + n2_, std::move(combined_gens)), base_order);
}

namespace {

Permutation restrict_to_prefix(const Permutation& g, std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = g(static_cast<Point>(i));
  return Permutation(std::move(img));
}

}  // namespace

GeneratorSet ActionPreimage::kernel_generators() const {
  // Level n2 of the combined chain fixes every image point.
  std::vector<Permutation> gens;
  const auto& levels = combined_.levels();
  if (n2_ < levels.size())
    for (const auto& g : levels[n2_].gens) gens.push_back(restrict_to_prefix(g, n_));
  return GeneratorSet(n_, std::move(gens));
}

std::optional<Permutation> ActionPreimage::element_mapping_to(const Permutation& tau) const {
  if (tau.degree() != n2_) throw degree_mismatch(tau.degree(), n2_);
  // Walk the image-point levels choosing the transversal representative that
  // realizes each prescribed image; pull the remaining targets back through
  // the chosen representative.
  std::vector<Point> target(n2_);
  for (std::size_t j = 0; j < n2_; ++j)
    target[j] = static_cast<Point>(n_) + tau(static_cast<Point>(j));
  std::vector<const Permutation*> chosen;
  const auto& levels = combined_.levels();
  for (std::size_t l = 0; l < n2_ && l < levels.size(); ++l) {
    const auto& lv = levels[l];
    // base points of the first n2_ levels are n_+0, n_+1, ... in order
    int pos = lv.orbit_index[target[l]];
    if (pos < 0) return std::nullopt;
    chosen.push_back(&lv.transversal[pos]);
    const Permutation inv = lv.transversal[pos].inverse();
    for (std::size_t j = l + 1; j < n2_; ++j) target[j] = inv(target[j]);
  }
  // Levels beyond the image part may be skipped: the identity completes the
  // element. Verify any prescribed targets not covered by levels.
  for (std::size_t l = levels.size(); l < n2_; ++l)
    if (target[l] != static_cast<Point>(n_ + l)) return std::nullopt;
  Permutation k = Permutation::identity(n_ + n2_);
  for (std::size_t i = chosen.size(); i-- > 0;) k = compose(k, *chosen[i]);
  return restrict_to_prefix(k, n_);
}

StabilizerChain ActionPreimage::preimage_subgroup(const StabilizerChain& target) const {
  if (target.degree() != n2_) throw degree_mismatch(target.degree(), n2_);
  GeneratorSet gens = kernel_generators();
  for (const auto& h : target.generators()) {
    auto g = element_mapping_to(h);
    if (!g) throw precondition_violation("target generator is not in the image of the action");
    gens.gens.push_back(std::move(*g));
  }
  return schreier_sims(gens);
}

StabilizerChain preimage_subgroup(const StabilizerChain& chain, const ActionMap& hom,
                                  const StabilizerChain& target) {
  return ActionPreimage(chain, hom).preimage_subgroup(target);
}

std::optional<Permutation> preimage_element(const StabilizerChain& chain, const ActionMap& hom,
                                            const Permutation& tau) {
  return ActionPreimage(chain, hom).element_mapping_to(tau);
}

StabilizerChain pointwise_stabilizer(const StabilizerChain& chain, const PointSet& S) {
  const std::size_t n = chain.degree();
  PointSet base_order;
  std::vector<bool> in_s(n, false);
  for (Point p : S) {
    if (p >= n) throw precondition_violation("stabilized point outside the domain");
    if (!in_s[p]) base_order.push_back(p);
    in_s[p] = true;
  }
  std::sort(base_order.begin(), base_order.end());
  const std::size_t k = base_order.size();
  for (Point p = 0; p < n; ++p)
    if (!in_s[p]) base_order.push_back(p);
  StabilizerChain reordered = schreier_sims(chain.generator_set(), base_order);
  std::vector<Permutation> gens;
  if (k < reordered.levels().size()) gens = reordered.levels()[k].gens;
  // k >= levels.size() means the stabilizer is trivial
  return schreier_sims(GeneratorSet(n, std::move(gens)));
}

}  // namespace striso
