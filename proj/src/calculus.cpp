#include "striso/calculus.hpp"

#include <algorithm>

namespace striso {

namespace {

// Two generators for Sym(points) embedded in Sym(n): a transposition of the
// first two points and a full cycle.
void append_symmetric_gens(std::size_t n, const PointSet& points,
                           std::vector<Permutation>& out) {
  if (points.size() < 2) return;
  std::vector<Point> swap_img(n);
  for (std::size_t i = 0; i < n; ++i) swap_img[i] = static_cast<Point>(i);
  swap_img[points[0]] = points[1];
  swap_img[points[1]] = points[0];
  out.emplace_back(std::move(swap_img));
  if (points.size() > 2) {
    std::vector<Point> cyc_img(n);
    for (std::size_t i = 0; i < n; ++i) cyc_img[i] = static_cast<Point>(i);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) cyc_img[points[i]] = points[i + 1];
    cyc_img[points.back()] = points.front();
    out.emplace_back(std::move(cyc_img));
  }
}

}  // namespace

std::pair<std::vector<std::pair<Symbol, PointSet>>, StabilizerChain> string_to_symmetric_product(
    const ColoredString& x) {
  auto classes = x.classes();
  std::vector<Permutation> gens;
  for (const auto& [sym, points] : classes) {
    (void)sym;
    append_symmetric_gens(x.degree(), points, gens);
  }
  return {std::move(classes), schreier_sims(GeneratorSet(x.degree(), std::move(gens)))};
}

std::pair<ColoredString, PartialCoset> shift_coset(const PartialCoset& c, const ColoredString& y,
                                                   const Permutation& sigma) {
  if (y.degree() != sigma.degree()) throw degree_mismatch(y.degree(), sigma.degree());
  ColoredString y_shifted = y.acted_by(sigma.inverse());
  if (c.is_empty()) return {std::move(y_shifted), c};
  return {std::move(y_shifted), c.shifted(sigma)};
}

PartialCoset union_cosets(const std::vector<PartialCoset>& parts) {
  if (parts.empty()) throw precondition_violation("union of no cosets has no degree");
  const std::size_t n = parts.front().degree();
  for (const auto& p : parts)
    if (p.degree() != n) throw degree_mismatch(p.degree(), n);

  const PartialCoset* anchor = nullptr;
  for (const auto& p : parts)
    if (!p.is_empty()) {
      anchor = &p;
      break;
    }
  if (!anchor) return PartialCoset::empty(n);

  Permutation anchor_rep_inv = anchor->rep().inverse();
  std::vector<Permutation> gens;
  for (const auto& p : parts) {
    if (p.is_empty()) continue;
    for (const auto& g : p.group().generators()) gens.push_back(g);
    gens.push_back(compose(p.rep(), anchor_rep_inv));
  }
  StabilizerChain group = schreier_sims(GeneratorSet(n, std::move(gens)));
  Permutation rep = anchor->rep();
  if (group.contains(rep)) rep = Permutation::identity(n);
  return PartialCoset::of(std::move(group), std::move(rep));
}

WindowProblem chain_windows(const PartialCoset& c1, const ColoredString& x,
                            const ColoredString& y, const PointSet& delta2) {
  WindowProblem wp;
  if (c1.is_empty()) {
    wp.resolved = true;
    wp.result = c1;
    return wp;
  }
  if (delta2.empty()) {
    wp.resolved = true;
    wp.result = c1;
    return wp;
  }
  wp.group = c1.group();
  wp.x = x;
  wp.y = y.acted_by(c1.rep().inverse());
  wp.window = delta2;
  wp.post = c1.rep();
  return wp;
}

Permutation restrict_perm(const Permutation& g, const PointSet& delta) {
  std::vector<int> pos(g.degree(), -1);
  for (std::size_t i = 0; i < delta.size(); ++i) pos[delta[i]] = static_cast<int>(i);
  std::vector<Point> img(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    int j = pos[g(delta[i])];
    if (j < 0) throw precondition_violation("window is not invariant under the permutation");
    img[i] = static_cast<Point>(j);
  }
  return Permutation(std::move(img));
}

ColoredString restrict_string(const ColoredString& x, const PointSet& delta) {
  std::vector<Symbol> out;
  out.reserve(delta.size());
  for (Point p : delta) out.push_back(x(p));
  return ColoredString(std::move(out));
}

ActionMap restriction_action(const StabilizerChain& G, const PointSet& delta) {
  (void)G;
  ActionMap hom;
  hom.image_degree = delta.size();
  PointSet d = delta;
  hom.apply = [d](const Permutation& g) { return restrict_perm(g, d); };
  return hom;
}

StabilizerChain restrict_group(const StabilizerChain& G, const PointSet& delta) {
  std::vector<Permutation> gens;
  for (const auto& g : G.generators()) gens.push_back(restrict_perm(g, delta));
  return schreier_sims(GeneratorSet(delta.size(), std::move(gens)));
}

PartialCoset lift_window_solution(const PartialCoset& inner, const StabilizerChain& G,
                                  const PointSet& delta) {
  const std::size_t n = G.degree();
  if (inner.is_empty()) return PartialCoset::empty(n);
  if (inner.degree() != delta.size()) throw degree_mismatch(inner.degree(), delta.size());
  // Eager invariance check; restrict_perm throws on violation.
  for (const auto& g : G.generators()) restrict_perm(g, delta);

  if (delta.size() == n) {
    // Full window: the inner solution already lives on the whole domain.
    bool natural = true;
    for (std::size_t i = 0; i < delta.size(); ++i)
      if (delta[i] != i) natural = false;
    if (natural) return inner;
  }
  ActionPreimage pre(G, restriction_action(G, delta));
  StabilizerChain lifted_group = pre.preimage_subgroup(inner.group());
  auto lifted_rep = pre.element_mapping_to(inner.rep());
  if (!lifted_rep)
    throw precondition_violation("inner representative is not a restriction of the group");
  return PartialCoset::of(std::move(lifted_group), std::move(*lifted_rep));
}

}  // namespace striso
