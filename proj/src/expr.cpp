#include "striso/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "striso/calculus.hpp"

namespace striso {

namespace {

void check_disjoint_parts(std::size_t n, const std::vector<PointSet>& parts) {
  std::vector<bool> used(n, false);
  for (const auto& part : parts) {
    if (part.empty()) throw precondition_violation("atom parts must be nonempty");
    for (Point p : part) {
      if (p >= n) throw precondition_violation("atom part point outside the domain");
      if (used[p]) throw precondition_violation("atom parts must be pairwise disjoint");
      used[p] = true;
    }
  }
}

}  // namespace

ExprPtr make_empty(std::size_t n) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Expr::Kind::Empty;
  e->degree_ = n;
  return e;
}

ExprPtr atom(std::size_t n, std::vector<PointSet> parts, Permutation rep) {
  if (rep.degree() != n) throw degree_mismatch(rep.degree(), n);
  for (auto& part : parts) std::sort(part.begin(), part.end());
  std::sort(parts.begin(), parts.end(),
            [](const PointSet& a, const PointSet& b) { return a.front() < b.front(); });
  check_disjoint_parts(n, parts);
  auto e = std::make_shared<Expr>();
  e->kind_ = Expr::Kind::Atom;
  e->degree_ = n;
  e->parts_ = std::move(parts);
  e->rep_ = std::move(rep);
  return e;
}

ExprPtr singleton_atom(const Permutation& sigma) {
  return atom(sigma.degree(), {}, sigma);
}

ExprPtr combine_union(std::size_t n, std::vector<Expr::UnionChild> children) {
  if (children.empty()) return make_empty(n);
  for (const auto& c : children) {
    if (!c.child) throw precondition_violation("null union child");
    if (c.child->degree() != n) throw degree_mismatch(c.child->degree(), n);
    if (c.shift.degree() != n) throw degree_mismatch(c.shift.degree(), n);
  }
  auto e = std::make_shared<Expr>();
  e->kind_ = Expr::Kind::Union;
  e->degree_ = n;
  e->children_ = std::move(children);
  return e;
}

ExprPtr combine_glue(std::size_t n, ExprPtr left, PointSet a1, ExprPtr right, PointSet a2) {
  if (!left || !right) throw precondition_violation("null glue child");
  std::sort(a1.begin(), a1.end());
  std::sort(a2.begin(), a2.end());
  if (left->degree() != a1.size()) throw degree_mismatch(left->degree(), a1.size());
  if (right->degree() != a2.size()) throw degree_mismatch(right->degree(), a2.size());
  for (Point p : a1)
    if (p >= n) throw precondition_violation("glue split point outside the domain");
  for (Point p : a2)
    if (p >= n) throw precondition_violation("glue split point outside the domain");
  {
    std::vector<bool> used(n, false);
    for (Point p : a1) used[p] = true;
    for (Point p : a2) {
      if (used[p]) throw precondition_violation("glue domains must be disjoint");
      used[p] = true;
    }
  }
  auto e = std::make_shared<Expr>();
  e->kind_ = Expr::Kind::Glue;
  e->degree_ = n;
  e->left_ = std::move(left);
  e->right_ = std::move(right);
  e->split_left_ = std::move(a1);
  e->split_right_ = std::move(a2);
  return e;
}

namespace {

// The action of sigma on the (sorted) parts list, as a permutation of part
// indices; throws if some part is not mapped onto a part.
Permutation induced_part_action(const Permutation& sigma, const std::vector<PointSet>& parts) {
  std::vector<Point> img(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    PointSet image;
    for (Point p : parts[i]) image.push_back(sigma(p));
    std::sort(image.begin(), image.end());
    auto it = std::find(parts.begin(), parts.end(), image);
    if (it == parts.end())
      throw precondition_violation("permutation does not permute the parts");
    img[i] = static_cast<Point>(it - parts.begin());
  }
  return Permutation(std::move(img));
}

// Parts of a child expression for the alt-extension validation: atoms carry
// them directly; other kinds are not accepted as alt-extension children.
const std::vector<PointSet>& alt_child_parts(const ExprPtr& child) {
  if (child->kind() != Expr::Kind::Atom)
    throw precondition_violation("alt-extension child must be an atomic subgroup");
  return child->parts();
}

}  // namespace

ExprPtr combine_alt_extend(ExprPtr child, Permutation s1, Permutation s2, Permutation s_out,
                           unsigned gamma_size, unsigned gamma_k) {
  if (!child) throw precondition_violation("null alt-extension child");
  const std::size_t n = child->degree();
  if (s1.degree() != n || s2.degree() != n || s_out.degree() != n)
    throw degree_mismatch(s1.degree(), n);
  const auto& parts = alt_child_parts(child);
  if (parts.empty()) throw precondition_violation("alt-extension needs at least one part");
  for (const auto& p : parts)
    if (p.size() != parts.front().size())
      throw precondition_violation("alt-extension parts must have equal sizes");
  if (big_binomial(gamma_size, gamma_k) != parts.size())
    throw precondition_violation("part count does not match the declared k-subset domain");
  // The two extension permutations must act on the parts exactly as the
  // alternating group of the declared set acts on its k-subsets: in
  // particular the induced action must have order gamma_size!/2.
  Permutation i1 = induced_part_action(s1, parts);
  Permutation i2 = induced_part_action(s2, parts);
  StabilizerChain induced =
      schreier_sims(GeneratorSet(parts.size(), {std::move(i1), std::move(i2)}));
  BigInt expect = big_factorial(gamma_size);
  if (gamma_size >= 2) expect /= 2;
  if (induced.order() != expect)
    throw precondition_violation("induced part action does not match Alt(" +
                                 std::to_string(gamma_size) + ") on " +
                                 std::to_string(gamma_k) + "-subsets");
  auto e = std::make_shared<Expr>();
  e->kind_ = Expr::Kind::AltExtend;
  e->degree_ = n;
  e->left_ = std::move(child);
  e->sigma1_ = std::move(s1);
  e->sigma2_ = std::move(s2);
  e->rep_ = std::move(s_out);
  e->gamma_m_ = gamma_size;
  e->gamma_k_ = gamma_k;
  return e;
}

namespace {

// Group of an atom: the product of symmetric groups on the parts, cut down to
// its even permutations when any part can carry a transposition.
StabilizerChain atom_group(const Expr& a) {
  std::vector<Permutation> gens;
  bool has_big_part = false;
  for (const auto& part : a.parts()) {
    if (part.size() < 2) continue;
    has_big_part = true;
    std::vector<Point> swp(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) swp[i] = static_cast<Point>(i);
    swp[part[0]] = part[1];
    swp[part[1]] = part[0];
    gens.emplace_back(std::move(swp));
    if (part.size() > 2) {
      std::vector<Point> cyc(a.degree());
      for (std::size_t i = 0; i < a.degree(); ++i) cyc[i] = static_cast<Point>(i);
      for (std::size_t i = 0; i + 1 < part.size(); ++i) cyc[part[i]] = part[i + 1];
      cyc[part.back()] = part.front();
      gens.emplace_back(std::move(cyc));
    }
  }
  StabilizerChain product = schreier_sims(GeneratorSet(a.degree(), std::move(gens)));
  if (!has_big_part) return product;
  auto [even_part, reps] =
      subgroup_by_test(product, [](const Permutation& g) { return g.is_even(); }, 2);
  (void)reps;
  return even_part;
}

Permutation embed_on(const Permutation& local, const PointSet& global, std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < global.size(); ++i) img[global[i]] = global[local(static_cast<Point>(i))];
  return Permutation(std::move(img));
}

}  // namespace

PartialCoset evaluate(const ExprPtr& e, std::uint64_t budget) {
  if (!e) throw precondition_violation("null expression");
  if (atom_count(e) > budget)
    throw budget_exhausted("expression atom count exceeds evaluation budget");
  switch (e->kind()) {
    case Expr::Kind::Empty:
      return PartialCoset::empty(e->degree());
    case Expr::Kind::Atom:
      return PartialCoset::of(atom_group(*e), e->rep());
    case Expr::Kind::Union: {
      std::vector<PartialCoset> parts;
      for (const auto& c : e->children())
        parts.push_back(evaluate(c.child, budget).shifted(c.shift));
      return union_cosets(parts);
    }
    case Expr::Kind::Glue: {
      PartialCoset l = evaluate(e->left(), budget);
      PartialCoset r = evaluate(e->right(), budget);
      if (l.is_empty() || r.is_empty()) return PartialCoset::empty(e->degree());
      std::vector<Permutation> gens;
      for (const auto& g : l.group().generators())
        gens.push_back(embed_on(g, e->split_left(), e->degree()));
      for (const auto& g : r.group().generators())
        gens.push_back(embed_on(g, e->split_right(), e->degree()));
      StabilizerChain grp = schreier_sims(GeneratorSet(e->degree(), std::move(gens)));
      Permutation rep = compose(embed_on(l.rep(), e->split_left(), e->degree()),
                                embed_on(r.rep(), e->split_right(), e->degree()));
      return PartialCoset::of(std::move(grp), std::move(rep));
    }
    case Expr::Kind::AltExtend: {
      PartialCoset c = evaluate(e->child(), budget);
      if (c.is_empty()) throw precondition_violation("alt-extension child denotes the empty set");
      if (!c.group().contains(c.rep()))
        throw precondition_violation("alt-extension child must denote a subgroup");
      std::vector<Permutation> gens = c.group().generators();
      gens.push_back(e->sigma1());
      gens.push_back(e->sigma2());
      StabilizerChain grp = schreier_sims(GeneratorSet(e->degree(), std::move(gens)));
      return PartialCoset::of(std::move(grp), e->sigma_out());
    }
  }
  throw precondition_violation("unreachable expression kind");
}

BigInt atom_count(const ExprPtr& e) {
  if (!e) throw precondition_violation("null expression");
  switch (e->kind()) {
    case Expr::Kind::Empty:
      return 0;
    case Expr::Kind::Atom:
      return 1;
    case Expr::Kind::Union: {
      BigInt total = 0;
      for (const auto& c : e->children()) total += atom_count(c.child);
      return total;
    }
    case Expr::Kind::Glue:
      return atom_count(e->left()) + atom_count(e->right());
    case Expr::Kind::AltExtend:
      return atom_count(e->child());
  }
  throw precondition_violation("unreachable expression kind");
}

bool verify_bound(const ExprPtr& e, std::size_t n, bool cfsg) {
  BigInt count = atom_count(e);
  if (count <= 1) return true;  // bound is at least 1 for every n >= 1
  const double K = cfsg ? 110.0 : 112.0;
  const double ln_n = std::log(static_cast<double>(n));
  const double log_bound = (1.0 + K * ln_n * ln_n) * ln_n;
  // log of the big-int count, accurate enough at these scales
  double log_count = 0.0;
  {
    BigInt c = count;
    while (c > (std::uint64_t{1} << 53)) {
      c >>= 32;
      log_count += 32.0 * std::log(2.0);
    }
    log_count += std::log(static_cast<double>(c.convert_to<std::uint64_t>()));
  }
  return log_count <= log_bound;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

void write_points(std::ostream& os, const PointSet& pts) {
  for (Point p : pts) os << ' ' << p;
}

void write_perm(std::ostream& os, const Permutation& g) {
  for (std::size_t i = 0; i < g.degree(); ++i) os << ' ' << g(static_cast<Point>(i));
}

void write_expr(std::ostream& os, const ExprPtr& e) {
  switch (e->kind()) {
    case Expr::Kind::Empty:
      os << "(empty " << e->degree() << ")";
      return;
    case Expr::Kind::Atom:
      os << "(atom " << e->degree() << " (parts";
      for (const auto& part : e->parts()) {
        os << " (p";
        write_points(os, part);
        os << ")";
      }
      os << ") (rep";
      write_perm(os, e->rep());
      os << "))";
      return;
    case Expr::Kind::Union:
      os << "(union " << e->degree();
      for (const auto& c : e->children()) {
        os << " ((";
        write_expr(os, c.child);
        os << ") (rep";
        write_perm(os, c.shift);
        os << "))";
      }
      os << ")";
      return;
    case Expr::Kind::Glue:
      os << "(glue " << e->degree() << " (left ";
      write_expr(os, e->left());
      os << ") (right ";
      write_expr(os, e->right());
      os << ") (split (p";
      write_points(os, e->split_left());
      os << ") (p";
      write_points(os, e->split_right());
      os << ")))";
      return;
    case Expr::Kind::AltExtend:
      os << "(altx " << e->degree() << " (child ";
      write_expr(os, e->child());
      os << ") (s1";
      write_perm(os, e->sigma1());
      os << ") (s2";
      write_perm(os, e->sigma2());
      os << ") (sp";
      write_perm(os, e->sigma_out());
      os << ") (gamma " << e->gamma_size() << " " << e->gamma_k() << "))";
      return;
  }
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw parse_error(std::string("expected '") + c + "' in expression text");
    ++pos;
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) throw parse_error("expected a token in expression text");
    return text.substr(start, pos - start);
  }
  std::uint64_t number() {
    std::string t = token();
    try {
      return std::stoull(t);
    } catch (...) {
      throw parse_error("expected a number, got '" + t + "'");
    }
  }
  std::vector<Point> number_list_until_close() {
    std::vector<Point> out;
    while (!peek_is(')')) out.push_back(static_cast<Point>(number()));
    expect(')');
    return out;
  }
  // "(tag n1 n2 ...)" with the given tag
  std::vector<Point> tagged_numbers(const std::string& tag) {
    expect('(');
    std::string t = token();
    if (t != tag) throw parse_error("expected (" + tag + " ...), got (" + t);
    return number_list_until_close();
  }

  ExprPtr expr() {
    expect('(');
    std::string kind = token();
    if (kind == "empty") {
      std::size_t n = number();
      expect(')');
      return make_empty(n);
    }
    if (kind == "atom") {
      std::size_t n = number();
      expect('(');
      if (token() != "parts") throw parse_error("expected (parts ...) in atom");
      std::vector<PointSet> parts;
      while (!peek_is(')')) parts.push_back(tagged_numbers("p"));
      expect(')');
      auto rep_imgs = tagged_numbers("rep");
      expect(')');
      return atom(n, std::move(parts), Permutation(std::move(rep_imgs)));
    }
    if (kind == "union") {
      std::size_t n = number();
      std::vector<Expr::UnionChild> children;
      while (!peek_is(')')) {
        expect('(');
        expect('(');
        ExprPtr child = expr();
        expect(')');
        auto shift = tagged_numbers("rep");
        expect(')');
        children.push_back({std::move(child), Permutation(std::move(shift))});
      }
      expect(')');
      return combine_union(n, std::move(children));
    }
    if (kind == "glue") {
      std::size_t n = number();
      expect('(');
      if (token() != "left") throw parse_error("expected (left ...) in glue");
      ExprPtr l = expr();
      expect(')');
      expect('(');
      if (token() != "right") throw parse_error("expected (right ...) in glue");
      ExprPtr r = expr();
      expect(')');
      expect('(');
      if (token() != "split") throw parse_error("expected (split ...) in glue");
      PointSet a1 = tagged_numbers("p");
      PointSet a2 = tagged_numbers("p");
      expect(')');
      expect(')');
      return combine_glue(n, std::move(l), std::move(a1), std::move(r), std::move(a2));
    }
    if (kind == "altx") {
      std::size_t n = number();
      expect('(');
      if (token() != "child") throw parse_error("expected (child ...) in altx");
      ExprPtr c = expr();
      expect(')');
      auto s1 = tagged_numbers("s1");
      auto s2 = tagged_numbers("s2");
      auto sp = tagged_numbers("sp");
      expect('(');
      if (token() != "gamma") throw parse_error("expected (gamma m k) in altx");
      unsigned m = static_cast<unsigned>(number());
      unsigned k = static_cast<unsigned>(number());
      expect(')');
      expect(')');
      if (c->degree() != n) throw parse_error("altx child degree does not match");
      return combine_alt_extend(std::move(c), Permutation(std::move(s1)),
                                Permutation(std::move(s2)), Permutation(std::move(sp)), m, k);
    }
    throw parse_error("unknown expression kind '" + kind + "'");
  }
};

}  // namespace

std::string serialize(const ExprPtr& e) {
  if (!e) throw precondition_violation("null expression");
  std::ostringstream os;
  write_expr(os, e);
  return os.str();
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw parse_error("trailing characters after expression");
  return e;
}

}  // namespace striso
