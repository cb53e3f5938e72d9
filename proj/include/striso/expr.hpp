#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "striso/bigint.hpp"
#include "striso/cosets.hpp"

namespace striso {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// An expression over atomic cosets and three combinators, denoting a coset of
// a permutation subgroup (or the empty set). Immutable; shared subtrees are
// counted with multiplicity by atom_count.
//
//   Atom       a coset of Alt(union of parts) intersect prod Sym(part)
//   Union      union of shifted child cosets of one common subgroup
//   Glue       direct product of two cosets on disjoint point sets
//   AltExtend  child subgroup extended by two permutations acting on its
//              parts the way Alt(gamma) acts on its k-subsets, then shifted
//   Empty      the empty set
class Expr {
 public:
  enum class Kind { Atom, Union, Glue, AltExtend, Empty };

  struct UnionChild {
    ExprPtr child;
    Permutation shift;
  };

  Kind kind() const { return kind_; }
  std::size_t degree() const { return degree_; }

  // Atom fields
  const std::vector<PointSet>& parts() const { return parts_; }
  const Permutation& rep() const { return rep_; }
  // Union fields
  const std::vector<UnionChild>& children() const { return children_; }
  // Glue fields; children live on re-indexed subdomains of the two splits.
  const ExprPtr& left() const { return left_; }
  const ExprPtr& right() const { return right_; }
  const PointSet& split_left() const { return split_left_; }
  const PointSet& split_right() const { return split_right_; }
  // AltExtend fields
  const ExprPtr& child() const { return left_; }
  const Permutation& sigma1() const { return sigma1_; }
  const Permutation& sigma2() const { return sigma2_; }
  const Permutation& sigma_out() const { return rep_; }
  unsigned gamma_size() const { return gamma_m_; }
  unsigned gamma_k() const { return gamma_k_; }

  friend ExprPtr make_empty(std::size_t n);
  friend ExprPtr atom(std::size_t n, std::vector<PointSet> parts, Permutation rep);
  friend ExprPtr combine_union(std::size_t n, std::vector<UnionChild> children);
  friend ExprPtr combine_glue(std::size_t n, ExprPtr left, PointSet a1, ExprPtr right,
                              PointSet a2);
  friend ExprPtr combine_alt_extend(ExprPtr child, Permutation s1, Permutation s2,
                                    Permutation s_out, unsigned gamma_size, unsigned gamma_k);

 private:
  Kind kind_ = Kind::Empty;
  std::size_t degree_ = 0;
  std::vector<PointSet> parts_;
  Permutation rep_;
  std::vector<UnionChild> children_;
  ExprPtr left_, right_;
  PointSet split_left_, split_right_;
  Permutation sigma1_, sigma2_;
  unsigned gamma_m_ = 0, gamma_k_ = 0;
};

ExprPtr make_empty(std::size_t n);

// Atomic coset: parts must be pairwise disjoint subsets of the domain. With
// every part a singleton (or no parts) the denoted set is the single
// permutation {rep}.
ExprPtr atom(std::size_t n, std::vector<PointSet> parts, Permutation rep);

// Shorthand for the singleton {sigma}.
ExprPtr singleton_atom(const Permutation& sigma);

// Union combinator: denotes the union of child-coset . shift over children.
// Zero children collapse to Empty. Callers guarantee the non-empty children
// denote cosets of one common subgroup.
ExprPtr combine_union(std::size_t n, std::vector<Expr::UnionChild> children);

// Glue combinator: children live on the re-indexed split domains (sorted
// order); denotes all degree-n permutations acting as a left-member on a1, as
// a right-member on a2, and fixing everything else.
ExprPtr combine_glue(std::size_t n, ExprPtr left, PointSet a1, ExprPtr right, PointSet a2);

// Alt-extension: child must denote a subgroup contained in the product of
// symmetric groups on its (equal-size) parts; <s1,s2> must permute those
// parts with the full alternating action of a gamma_size-set on its
// gamma_k-subsets. Validated by computing the induced part action.
ExprPtr combine_alt_extend(ExprPtr child, Permutation s1, Permutation s2, Permutation s_out,
                           unsigned gamma_size, unsigned gamma_k);

// The exact denoted coset, built bottom-up. The budget caps intermediate
// expansions (number of atoms and union fan-in).
PartialCoset evaluate(const ExprPtr& e, std::uint64_t budget = 1u << 22);

// Number of atom leaves, counting shared subtrees with multiplicity.
BigInt atom_count(const ExprPtr& e);

// atom_count(e) <= n^(1 + K ln^2 n) with K = 110 (cfsg) or 112 (otherwise);
// logarithms are natural.
bool verify_bound(const ExprPtr& e, std::size_t n, bool cfsg);

// S-expression text form; parse/serialize round-trip byte-identically.
std::string serialize(const ExprPtr& e);
ExprPtr parse_expr(const std::string& text);

}  // namespace striso
