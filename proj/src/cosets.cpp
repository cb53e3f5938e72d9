#include "striso/cosets.hpp"

#include <algorithm>
#include <map>

namespace striso {

ColoredString ColoredString::acted_by(const Permutation& g) const {
  if (g.degree() != degree()) throw degree_mismatch(g.degree(), degree());
  std::vector<Symbol> out(symbols.size());
  for (Point r = 0; r < symbols.size(); ++r) out[g(r)] = symbols[r];
  return ColoredString(std::move(out));
}

std::vector<std::pair<Symbol, PointSet>> ColoredString::classes() const {
  std::map<Symbol, PointSet> by_symbol;
  for (Point p = 0; p < symbols.size(); ++p) by_symbol[symbols[p]].push_back(p);
  return {by_symbol.begin(), by_symbol.end()};
}

bool maps_string(const Permutation& g, const ColoredString& x, const ColoredString& y) {
  if (x.degree() != y.degree()) throw degree_mismatch(x.degree(), y.degree());
  if (g.degree() != x.degree()) throw degree_mismatch(g.degree(), x.degree());
  for (Point r = 0; r < x.degree(); ++r)
    if (x(r) != y(g(r))) return false;
  return true;
}

bool maps_string_on(const Permutation& g, const ColoredString& x, const ColoredString& y,
                    const PointSet& window) {
  for (Point r : window)
    if (x(r) != y(g(r))) return false;
  return true;
}

PartialCoset PartialCoset::empty(std::size_t degree) {
  PartialCoset c;
  c.empty_ = true;
  c.degree_ = degree;
  return c;
}

PartialCoset PartialCoset::of(StabilizerChain group, Permutation rep) {
  if (group.degree() != rep.degree()) throw degree_mismatch(group.degree(), rep.degree());
  PartialCoset c;
  c.empty_ = false;
  c.degree_ = group.degree();
  c.group_ = std::move(group);
  c.rep_ = std::move(rep);
  return c;
}

const StabilizerChain& PartialCoset::group() const {
  if (empty_) throw precondition_violation("empty coset has no group");
  return group_;
}

const Permutation& PartialCoset::rep() const {
  if (empty_) throw precondition_violation("empty coset has no representative");
  return rep_;
}

bool PartialCoset::member(const Permutation& g) const {
  if (empty_) return false;
  return group_.contains(compose(g, rep_.inverse()));
}

PartialCoset PartialCoset::shifted(const Permutation& sigma) const {
  if (empty_) return *this;
  return of(group_, compose(rep_, sigma));
}

std::vector<Permutation> PartialCoset::elements(std::uint64_t max_elements) const {
  if (empty_) return {};
  std::vector<Permutation> out = all_elements(group_, max_elements);
  for (auto& g : out) g = compose(g, rep_);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace striso
