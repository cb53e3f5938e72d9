#include "striso/solver.hpp"

#include <algorithm>

namespace striso {

namespace {

struct Solver {
  SolveOptions opts;
  SolveStats stats;

  struct Piece {
    PartialCoset coset;
    ExprPtr expr;
  };

  // ---- base cases ---------------------------------------------------------

  Piece brute(const StabilizerChain& G, const ColoredString& x, const ColoredString& y) {
    ++stats.brute_force;
    const std::size_t n = G.degree();
    std::vector<Permutation> autos;
    Permutation rep;
    bool found = false;
    ElementStream stream(G);
    std::vector<Expr::UnionChild> children;
    while (auto g = stream.next()) {
      if (maps_string(*g, x, y)) {
        if (!found) {
          found = true;
          rep = *g;
        }
        children.push_back({singleton_atom(*g), Permutation::identity(n)});
      }
      if (maps_string(*g, x, x)) autos.push_back(*g);
    }
    if (!found) return {PartialCoset::empty(n), make_empty(n)};
    StabilizerChain aut_group = schreier_sims(GeneratorSet(n, std::move(autos)));
    return {PartialCoset::of(std::move(aut_group), std::move(rep)),
            combine_union(n, std::move(children))};
  }

  // Iso inside the natural alternating group: automorphisms of x in the
  // symmetric group form a product of symmetric groups on the symbol classes;
  // cut to even permutations and fix parity with one in-class transposition.
  Piece alternating_base(const StabilizerChain& alt, const ColoredString& x,
                         const ColoredString& y) {
    ++stats.alternating_base;
    const std::size_t n = alt.degree();
    auto xc = x.classes();
    auto yc = y.classes();
    if (xc.size() != yc.size()) return {PartialCoset::empty(n), make_empty(n)};
    for (std::size_t i = 0; i < xc.size(); ++i)
      if (xc[i].first != yc[i].first || xc[i].second.size() != yc[i].second.size())
        return {PartialCoset::empty(n), make_empty(n)};

    auto [classes, sym_product] = string_to_symmetric_product(x);
    auto [even_part, parity_reps] = subgroup_by_test(
        sym_product, [](const Permutation& g) { return g.is_even(); }, 2);
    (void)parity_reps;

    // Class-aligned bijection sending x-classes onto y-classes in order.
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < xc.size(); ++i)
      for (std::size_t j = 0; j < xc[i].second.size(); ++j)
        img[xc[i].second[j]] = yc[i].second[j];
    Permutation pi(std::move(img));

    Permutation rep = pi;
    if (!pi.is_even()) {
      const PointSet* big = nullptr;
      for (const auto& [sym, pts] : xc)
        if (pts.size() >= 2) {
          big = &pts;
          break;
        }
      if (!big) return {PartialCoset::empty(n), make_empty(n)};
      std::vector<Point> tr(n);
      for (std::size_t i = 0; i < n; ++i) tr[i] = static_cast<Point>(i);
      tr[(*big)[0]] = (*big)[1];
      tr[(*big)[1]] = (*big)[0];
      rep = compose(Permutation(std::move(tr)), pi);
    }
    std::vector<PointSet> parts;
    for (auto& [sym, pts] : xc) parts.push_back(pts);
    return {PartialCoset::of(std::move(even_part), rep), atom(n, std::move(parts), rep)};
  }

  // Sym(n) splits into its even part and one odd coset.
  Piece symmetric_split(const StabilizerChain& sym, const ColoredString& x,
                        const ColoredString& y, std::size_t depth) {
    ++stats.symmetric_splits;
    const std::size_t n = sym.degree();
    StabilizerChain alt = alternating_group(n);
    Piece even_piece = alternating_base(alt, x, y);
    std::vector<Point> tr(n);
    for (std::size_t i = 0; i < n; ++i) tr[i] = static_cast<Point>(i);
    tr[0] = 1;
    tr[1] = 0;
    Permutation swap01(std::move(tr));
    Piece odd_piece = alternating_base(alt, x, y.acted_by(swap01));
    (void)depth;

    stats.union_branches += 2;
    std::vector<PartialCoset> cosets{even_piece.coset, odd_piece.coset.shifted(swap01)};
    std::vector<Expr::UnionChild> children;
    if (!even_piece.coset.is_empty())
      children.push_back({even_piece.expr, Permutation::identity(n)});
    if (!odd_piece.coset.is_empty()) children.push_back({odd_piece.expr, swap01});
    return {union_cosets(cosets), combine_union(n, std::move(children))};
  }

  static StabilizerChain alternating_group(std::size_t n) {
    std::vector<Permutation> gens;
    if (n >= 3) {
      std::vector<Point> three(n);
      for (std::size_t i = 0; i < n; ++i) three[i] = static_cast<Point>(i);
      three[0] = 1;
      three[1] = 2;
      three[2] = 0;
      gens.emplace_back(std::move(three));
      if (n > 3) {
        std::vector<Point> cyc(n);
        for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>(i);
        if (n % 2 == 1) {
          for (std::size_t i = 0; i + 1 < n; ++i) cyc[i] = static_cast<Point>(i + 1);
          cyc[n - 1] = 0;
        } else {
          for (std::size_t i = 1; i + 1 < n; ++i) cyc[i] = static_cast<Point>(i + 1);
          cyc[n - 1] = 1;
        }
        gens.emplace_back(std::move(cyc));
      }
    }
    return schreier_sims(GeneratorSet(n, std::move(gens)));
  }

  // ---- intransitive reduction ---------------------------------------------

  // Expression denoting a plain subgroup: run the solver on a constant string
  // over the group's own domain.
  ExprPtr subgroup_expr(const StabilizerChain& H, std::size_t depth) {
    Piece p = solve(H, ColoredString::constant(H.degree()),
                    ColoredString::constant(H.degree()), depth + 1);
    return p.expr;
  }

  Piece intransitive(const StabilizerChain& G, const ColoredString& x, const ColoredString& y,
                     const OrbitPartition& op, std::size_t depth) {
    ++stats.intransitive;
    const std::size_t n = G.degree();
    const PointSet& delta = op.orbit_list.front();
    PointSet rest;
    for (std::size_t i = 1; i < op.orbit_list.size(); ++i)
      rest.insert(rest.end(), op.orbit_list[i].begin(), op.orbit_list[i].end());
    std::sort(rest.begin(), rest.end());

    // Stage 1: the restricted problem on the first orbit.
    Piece inner = solve(restrict_group(G, delta), restrict_string(x, delta),
                        restrict_string(y, delta), depth + 1);
    if (inner.coset.is_empty()) return {PartialCoset::empty(n), make_empty(n)};

    ActionPreimage to_delta(G, restriction_action(G, delta));
    StabilizerChain h_bar = to_delta.preimage_subgroup(inner.coset.group());
    auto tau_bar = to_delta.element_mapping_to(inner.coset.rep());
    if (!tau_bar) throw precondition_violation("restricted solution escapes the group");

    // Stage 2: the remaining window, over the stage-1 stabilizer preimage.
    ColoredString y1 = y.acted_by(tau_bar->inverse());
    Piece remainder = solve(restrict_group(h_bar, rest), restrict_string(x, rest),
                            restrict_string(y1, rest), depth + 1);
    if (remainder.coset.is_empty()) return {PartialCoset::empty(n), make_empty(n)};

    ActionPreimage to_rest(h_bar, restriction_action(h_bar, rest));
    StabilizerChain k_bar = to_rest.preimage_subgroup(remainder.coset.group());
    auto ups_bar = to_rest.element_mapping_to(remainder.coset.rep());
    if (!ups_bar) throw precondition_violation("window solution escapes the group");
    Permutation rho = compose(*ups_bar, *tau_bar);
    PartialCoset coset = PartialCoset::of(k_bar, rho);

    // The answer group need not split across the two sides: decompose it over
    // its split-local part and emit one glue per coset of that part.
    StabilizerChain n1 = restrict_group(pointwise_stabilizer(k_bar, rest), delta);
    StabilizerChain n2 = restrict_group(pointwise_stabilizer(k_bar, delta), rest);
    BigInt split_order = n1.order() * n2.order();
    BigInt q_big = k_bar.order() / split_order;
    if (q_big * split_order != k_bar.order())
      throw precondition_violation("split-local subgroup order does not divide the group order");

    ExprPtr expr;
    if (q_big == 1 && n1.order() == inner.coset.group().order() &&
        n2.order() == remainder.coset.group().order()) {
      // Uncorrelated: reuse the recursive expressions, unshifted to groups.
      ExprPtr e1 = combine_union(
          delta.size(), {{inner.expr, inner.coset.rep().inverse()}});
      ExprPtr e2 = combine_union(
          rest.size(), {{remainder.expr, remainder.coset.rep().inverse()}});
      ExprPtr glue = combine_glue(n, std::move(e1), delta, std::move(e2), rest);
      stats.union_branches += 1;
      expr = combine_union(n, {{std::move(glue), rho}});
    } else {
      if (q_big > opts.branch_cap)
        throw budget_exhausted("split decomposition needs " + q_big.str() +
                               " branches, cap is " + std::to_string(opts.branch_cap));
      std::uint64_t q = q_big.convert_to<std::uint64_t>();
      ExprPtr e1 = subgroup_expr(n1, depth);
      ExprPtr e2 = subgroup_expr(n2, depth);
      ExprPtr glue = combine_glue(n, std::move(e1), delta, std::move(e2), rest);
      auto [local, reps] = subgroup_by_test(
          k_bar,
          [&](const Permutation& g) {
            return n1.contains(restrict_perm(g, delta)) && n2.contains(restrict_perm(g, rest));
          },
          q);
      (void)local;
      std::vector<Expr::UnionChild> children;
      for (const auto& k : reps) children.push_back({glue, compose(k, rho)});
      stats.union_branches += reps.size();
      expr = combine_union(n, std::move(children));
    }
    return {std::move(coset), std::move(expr)};
  }

  // ---- imprimitive reduction ----------------------------------------------

  Piece imprimitive(const StabilizerChain& G, const ColoredString& x, const ColoredString& y,
                    const BlockSystem& blocks, std::size_t depth) {
    ++stats.imprimitive;
    const std::size_t n = G.degree();
    ActionMap hom = block_action(blocks);
    ActionPreimage pre(G, hom);
    StabilizerChain kernel = schreier_sims(pre.kernel_generators());

    std::vector<Permutation> qgens;
    for (const auto& g : G.generators()) qgens.push_back(hom.apply(g));
    StabilizerChain quotient = schreier_sims(GeneratorSet(blocks.blocks.size(), std::move(qgens)));
    if (quotient.order() > opts.branch_cap)
      throw budget_exhausted("block quotient has " + quotient.order().str() +
                             " cosets, cap is " + std::to_string(opts.branch_cap));

    std::vector<PartialCoset> cosets;
    std::vector<Expr::UnionChild> children;
    ElementStream stream(quotient);
    while (auto q = stream.next()) {
      auto sigma = pre.element_mapping_to(*q);
      if (!sigma) throw precondition_violation("quotient element without preimage");
      ++stats.union_branches;
      Piece sub = solve(kernel, x, y.acted_by(sigma->inverse()), depth + 1);
      if (sub.coset.is_empty()) continue;
      cosets.push_back(sub.coset.shifted(*sigma));
      children.push_back({sub.expr, *sigma});
    }
    if (cosets.empty()) return {PartialCoset::empty(n), make_empty(n)};
    return {union_cosets(cosets), combine_union(n, std::move(children))};
  }

  // ---- dispatch -----------------------------------------------------------

  Piece solve(const StabilizerChain& G, const ColoredString& x, const ColoredString& y,
              std::size_t depth) {
    stats.max_depth = std::max(stats.max_depth, depth);
    const std::size_t n = G.degree();
    if (x.degree() != n || y.degree() != n) throw degree_mismatch(x.degree(), n);

    BigInt order = G.order();
    if (n == 1 || order <= opts.budget) return brute(G, x, y);

    OrbitPartition op = orbits(G.generator_set());
    if (!op.transitive()) return intransitive(G, x, y, op, depth);

    BigInt full = big_factorial(static_cast<unsigned>(n));
    if (order == full) return symmetric_split(G, x, y, depth);
    if (order * 2 == full) return alternating_base(G, x, y);

    auto blocks = minimal_blocks(G.generator_set());
    if (blocks) return imprimitive(G, x, y, *blocks, depth);

    throw budget_exhausted("primitive group of order " + order.str() +
                           " exceeds the enumeration budget " + std::to_string(opts.budget));
  }
};

}  // namespace

SolveResult iso(const StabilizerChain& G, const ColoredString& x, const ColoredString& y,
                const SolveOptions& opts) {
  if (opts.budget == 0 || opts.branch_cap == 0)
    throw precondition_violation("budgets must be positive");
  Solver s;
  s.opts = opts;
  auto piece = s.solve(G, x, y, 0);
  s.stats.atom_count = atom_count(piece.expr);
  return {std::move(piece.coset), std::move(piece.expr), std::move(s.stats)};
}

SolveResult aut(const StabilizerChain& G, const ColoredString& x, const SolveOptions& opts) {
  SolveResult r = iso(G, x, x, opts);
  if (!r.coset.is_empty())
    r.coset = PartialCoset::of(r.coset.group(), Permutation::identity(G.degree()));
  return r;
}

PartialCoset brute_force_iso(const StabilizerChain& G, const ColoredString& x,
                             const ColoredString& y, std::uint64_t max_elements) {
  if (G.order() > max_elements)
    throw budget_exhausted("group order " + G.order().str() + " exceeds element budget " +
                           std::to_string(max_elements));
  const std::size_t n = G.degree();
  if (x.degree() != n || y.degree() != n) throw degree_mismatch(x.degree(), n);
  std::vector<Permutation> autos;
  Permutation rep;
  bool found = false;
  ElementStream stream(G);
  while (auto g = stream.next()) {
    if (maps_string(*g, x, y) && !found) {
      found = true;
      rep = *g;
    }
    if (maps_string(*g, x, x)) autos.push_back(*g);
  }
  if (!found) return PartialCoset::empty(n);
  return PartialCoset::of(schreier_sims(GeneratorSet(n, std::move(autos))), std::move(rep));
}

}  // namespace striso
