#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "striso/error.hpp"

namespace striso {

using Point = std::uint32_t;
using PointSet = std::vector<Point>;  // always kept sorted ascending

// A permutation of {0,...,n-1} stored as an image table: images()[i] is the
// image of point i. Immutable after construction.
class Permutation {
 public:
  Permutation() = default;

  // Identity on n points.
  explicit Permutation(std::size_t n) : images_(n) {
    for (std::size_t i = 0; i < n; ++i) images_[i] = static_cast<Point>(i);
  }

  // Takes an image table; throws if it is not a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n) { return Permutation(n); }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  // Sign of the permutation: true iff a product of an even number of
  // transpositions.
  bool is_even() const;

  // Space-separated image table, e.g. "1 0 2".
  std::string str() const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<Point> images_;
};

// Apply p first, then q: result(i) = q(p(i)).
Permutation compose(const Permutation& p, const Permutation& q);

// A degree plus a list of generators, all of that degree. An empty list
// denotes the trivial group.
struct GeneratorSet {
  std::size_t degree = 0;
  std::vector<Permutation> gens;

  GeneratorSet() = default;
  GeneratorSet(std::size_t n, std::vector<Permutation> g);
};

}  // namespace striso
