#include "striso/perm.hpp"

#include <sstream>

namespace striso {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point v : images_) {
    if (v >= images_.size() || seen[v])
      throw precondition_violation("image table is not a bijection");
    seen[v] = true;
  }
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  Permutation r;
  r.images_ = std::move(inv);
  return r;
}

bool Permutation::is_even() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) seen[j] = true;
  }
  return ((images_.size() - cycles) % 2) == 0;
}

std::string Permutation::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ' ';
    os << images_[i];
  }
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw degree_mismatch(p.degree(), q.degree());
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) img[i] = q(p(static_cast<Point>(i)));
  return Permutation(std::move(img));
}

GeneratorSet::GeneratorSet(std::size_t n, std::vector<Permutation> g)
    : degree(n), gens(std::move(g)) {
  for (const auto& p : gens)
    if (p.degree() != n) throw degree_mismatch(n, p.degree());
}

}  // namespace striso
