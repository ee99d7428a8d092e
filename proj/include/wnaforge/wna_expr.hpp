#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "wnaforge/lqrs.hpp"
#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

// Binary product tree over the generator f, the augmenting element nu, and
// nucleus atoms. Trees are immutable and shared.
struct WnaTree {
  enum class Kind { bare_f, nu, atom, node };

  Kind kind;
  Atom leaf;  // kind == atom
  int grade = 0;
  std::shared_ptr<const WnaTree> left, right;

  static std::shared_ptr<const WnaTree> f() {
    auto t = std::make_shared<WnaTree>();
    t->kind = Kind::bare_f;
    return t;
  }
  static std::shared_ptr<const WnaTree> nu_leaf() {
    auto t = std::make_shared<WnaTree>();
    t->kind = Kind::nu;
    return t;
  }
  static std::shared_ptr<const WnaTree> atom_leaf(Atom a) {
    auto t = std::make_shared<WnaTree>();
    t->kind = Kind::atom;
    t->leaf = std::move(a);
    return t;
  }
  static std::shared_ptr<const WnaTree> node(int grade,
                                             std::shared_ptr<const WnaTree> l,
                                             std::shared_ptr<const WnaTree> r) {
    auto t = std::make_shared<WnaTree>();
    t->kind = Kind::node;
    t->grade = grade;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
  }
};

using WnaTreePtr = std::shared_ptr<const WnaTree>;

inline int wna_tree_compare(const WnaTree& a, const WnaTree& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case WnaTree::Kind::bare_f:
    case WnaTree::Kind::nu:
      return 0;
    case WnaTree::Kind::atom: {
      if (a.leaf < b.leaf) return -1;
      if (b.leaf < a.leaf) return 1;
      return 0;
    }
    case WnaTree::Kind::node: {
      if (a.grade != b.grade) return a.grade < b.grade ? -1 : 1;
      if (int c = wna_tree_compare(*a.left, *b.left)) return c;
      return wna_tree_compare(*a.right, *b.right);
    }
  }
  return 0;
}

struct WnaTreeLess {
  bool operator()(const WnaTreePtr& a, const WnaTreePtr& b) const {
    return wna_tree_compare(*a, *b) < 0;
  }
};

inline bool wna_is_nucleus_top(const WnaTree& t) {
  // Products land in the middle nucleus, as do nucleus atoms. Only the bare
  // generators f and nu sit outside it.
  return t.kind == WnaTree::Kind::node || t.kind == WnaTree::Kind::atom;
}

// Reassociate (x o y) o z -> x o (y o z) whenever the middle factor lies in
// the nucleus and both products are grade 1. Right-leaning trees are the
// normal form.
inline WnaTreePtr wna_canonical(const WnaTreePtr& t) {
  if (t->kind != WnaTree::Kind::node) return t;
  WnaTreePtr l = wna_canonical(t->left);
  WnaTreePtr r = wna_canonical(t->right);
  if (t->grade == 1 && l->kind == WnaTree::Kind::node && l->grade == 1 &&
      wna_is_nucleus_top(*l->right)) {
    WnaTreePtr shifted = WnaTree::node(1, l->right, r);
    return wna_canonical(WnaTree::node(1, l->left, shifted));
  }
  return WnaTree::node(t->grade, l, r);
}

// Linear combination of product trees.
class WnaExpr {
 public:
  static WnaExpr zero() { return WnaExpr(); }
  static WnaExpr tree(WnaTreePtr t, Rational c = Rational(1)) {
    WnaExpr e;
    e.add_term(std::move(t), c);
    return e;
  }
  static WnaExpr f() { return tree(WnaTree::f()); }
  static WnaExpr nu() { return tree(WnaTree::nu_leaf()); }
  static WnaExpr atom(Atom a) { return tree(WnaTree::atom_leaf(std::move(a))); }
  // Multilinear embedding of a nucleus polynomial: each word becomes a
  // right-leaning grade-1 chain of its atoms.
  static WnaExpr lift(const NcExpr& e) {
    WnaExpr out;
    for (const auto& [word, c] : e.terms()) {
      if (word.empty())
        throw ConfigError("cannot lift a scalar term into a product tree");
      WnaTreePtr t = WnaTree::atom_leaf(word.back());
      for (auto it = word.rbegin() + 1; it != word.rend(); ++it)
        t = WnaTree::node(1, WnaTree::atom_leaf(*it), t);
      out.add_term(std::move(t), c);
    }
    return out;
  }

  const std::map<WnaTreePtr, Rational, WnaTreeLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(WnaTreePtr t, const Rational& c) {
    if (c.is_zero()) return;
    t = wna_canonical(t);
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      terms_.emplace(std::move(t), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  WnaExpr& operator+=(const WnaExpr& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  friend WnaExpr operator+(WnaExpr a, const WnaExpr& b) { return a += b; }
  friend WnaExpr operator-(WnaExpr a, const WnaExpr& b) {
    return a += Rational(-1) * b;
  }
  friend WnaExpr operator*(const Rational& c, const WnaExpr& e) {
    WnaExpr out;
    if (c.is_zero()) return out;
    for (const auto& [t, v] : e.terms_) out.terms_[t] = c * v;
    return out;
  }
  friend bool operator==(const WnaExpr& a, const WnaExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
      if (wna_tree_compare(*ia->first, *ib->first) != 0) return false;
      if (ia->second != ib->second) return false;
    }
    return true;
  }

 private:
  std::map<WnaTreePtr, Rational, WnaTreeLess> terms_;
};

// Graded product a o_n b, reduced on the spot: for n >= 2,
//   a o_n b = a o (f o_{n-1} b) - (a o f) o_{n-1} b.
inline WnaExpr circ(int n, const WnaExpr& a, const WnaExpr& b) {
  if (n < 1) throw ConfigError("product grade must be positive");
  WnaExpr out;
  if (n == 1) {
    for (const auto& [ta, ca] : a.terms())
      for (const auto& [tb, cb] : b.terms())
        out.add_term(WnaTree::node(1, ta, tb), ca * cb);
    return out;
  }
  WnaExpr fb = circ(n - 1, WnaExpr::f(), b);
  WnaExpr af = circ(1, a, WnaExpr::f());
  return circ(1, a, fb) - circ(n - 1, af, b);
}

namespace detail {

struct Augmented {
  Rational nu_coeff;  // multiple of nu
  NcExpr nucleus;
};

inline Augmented realize_tree(const WnaTree& t) {
  switch (t.kind) {
    case WnaTree::Kind::bare_f:
      return {Rational(1), Rational(-1) * NcExpr::atom(Atom{Symbol{"phi", {}, false}, {}})};
    case WnaTree::Kind::nu:
      return {Rational(1), NcExpr::zero()};
    case WnaTree::Kind::atom:
      return {Rational(0), NcExpr::atom(t.leaf)};
    case WnaTree::Kind::node: {
      Augmented l = realize_tree(*t.left);
      Augmented r = realize_tree(*t.right);
      int n = t.grade;
      NcExpr Ln = grade_atom("L", n);
      NcExpr Qn = grade_atom("Q", n);
      NcExpr Rn = grade_atom("R", n);
      NcExpr Sn = grade_atom("S", n);
      NcExpr out = (l.nu_coeff * r.nu_coeff * Rational(-1)) * Sn;
      out += l.nu_coeff * (Ln * r.nucleus);
      out += (r.nu_coeff * Rational(-1)) * (l.nucleus * Rn);
      out += l.nucleus * Qn * r.nucleus;
      return {Rational(0), out};
    }
  }
  return {Rational(0), NcExpr::zero()};
}

}  // namespace detail

// Evaluate in the matrix family: f = nu - phi, nu o_n nu = -S_n,
// nu o_n A = L_n A, A o_n nu = -A R_n, A o_n B = A Q_n B for nucleus A, B.
// A leftover multiple of nu (only possible for unproducted generators) is
// emitted as the constant symbol nu.
inline NcExpr map_to_matrix_realization(const WnaExpr& e) {
  NcExpr out;
  for (const auto& [t, c] : e.terms()) {
    detail::Augmented a = detail::realize_tree(*t);
    out += c * a.nucleus;
    if (!a.nu_coeff.is_zero())
      out += (c * a.nu_coeff) * NcExpr::atom(Atom{Symbol{"nu", {}, true}, {}});
  }
  return out;
}

enum class LemmaSide { left, right };

// Closed expansions of f o_n a and a o_n f through iterated grade-1
// multiplication by f, with p_j = f o_j f:
//   f o_n a = L_f^n a - sum_{k=1}^{n-1} p_{n-k} o (L_f^{k-1} a)
//   a o_n f = (-1)^{n+1} R_f^n a - sum_{k=1}^{n-1} (-1)^k (R_f^{k-1} a) o p_{n-k}.
inline WnaExpr lemma_expand(LemmaSide side, int n, const WnaExpr& a) {
  if (n < 1) throw ConfigError("product grade must be positive");
  WnaExpr fexpr = WnaExpr::f();
  std::vector<WnaExpr> iter;  // L_f^k a or R_f^k a for k = 0..n
  iter.push_back(a);
  for (int k = 1; k <= n; ++k)
    iter.push_back(side == LemmaSide::left ? circ(1, fexpr, iter.back())
                                           : circ(1, iter.back(), fexpr));
  WnaExpr out = side == LemmaSide::left
                    ? iter[static_cast<size_t>(n)]
                    : Rational(n % 2 == 0 ? -1 : 1) * iter[static_cast<size_t>(n)];
  for (int k = 1; k <= n - 1; ++k) {
    WnaExpr p = circ(n - k, fexpr, fexpr);
    if (side == LemmaSide::left) {
      out += Rational(-1) * circ(1, p, iter[static_cast<size_t>(k - 1)]);
    } else {
      Rational sign(k % 2 == 0 ? -1 : 1);
      out += sign * circ(1, iter[static_cast<size_t>(k - 1)], p);
    }
  }
  return out;
}

}  // namespace wnaforge
