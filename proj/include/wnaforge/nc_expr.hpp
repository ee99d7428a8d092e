#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wnaforge/rational.hpp"
#include "wnaforge/var_index.hpp"

namespace wnaforge {

// A symbol names a (generally matrix-valued) quantity. Identity is the
// (name, sub) pair; `constant` marks quantities that all derivations kill.
// Indexed families like L{2} carry their index in `sub`.
struct Symbol {
  std::string name;
  std::vector<int> sub;
  bool constant = false;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.name == b.name && a.sub == b.sub;
  }
  friend auto operator<=>(const Symbol& a, const Symbol& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.sub <=> b.sub;
  }

  std::string str() const {
    if (sub.empty()) return name;
    std::string out = name + "{";
    for (size_t i = 0; i < sub.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(sub[i]);
    }
    return out + "}";
  }
};

inline Symbol sym(std::string name, bool constant = false) {
  return Symbol{std::move(name), {}, constant};
}
inline Symbol sym(std::string name, std::vector<int> sub, bool constant = false) {
  return Symbol{std::move(name), std::move(sub), constant};
}

// A symbol decorated with a multiset of derivatives. Mixed partials commute,
// so the multiset is kept sorted.
struct Atom {
  Symbol symbol;
  std::vector<VarIndex> derivs;

  Atom() = default;
  Atom(Symbol s, std::vector<VarIndex> d = {}) : symbol(std::move(s)), derivs(std::move(d)) {
    std::sort(derivs.begin(), derivs.end());
  }

  Atom with_derivative(const VarIndex& v) const {
    Atom out = *this;
    out.derivs.insert(std::upper_bound(out.derivs.begin(), out.derivs.end(), v), v);
    return out;
  }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.symbol <=> b.symbol; c != 0) return c;
    return a.derivs <=> b.derivs;
  }
};

using Word = std::vector<Atom>;

// Graded-lexicographic word order: longer words sort later; equal lengths
// compare atomwise. This is a monomial order compatible with concatenation,
// which the constraint-oriented rewriting in flows depends on.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Noncommutative polynomial: finite rational combination of words in atoms.
// Always kept normalized (like words merged, zero coefficients dropped), so
// normalization is idempotent by construction and equality is map equality.
class NcExpr {
 public:
  using Map = std::map<Word, Rational, WordLess>;

  NcExpr() = default;
  static NcExpr zero() { return NcExpr(); }
  static NcExpr scalar(Rational c) {
    NcExpr e;
    e.add_term(Word{}, std::move(c));
    return e;
  }
  static NcExpr one() { return scalar(1); }
  static NcExpr atom(Atom a) {
    NcExpr e;
    e.add_term(Word{std::move(a)}, 1);
    return e;
  }
  static NcExpr word(Word w, Rational c = 1) {
    NcExpr e;
    e.add_term(std::move(w), std::move(c));
    return e;
  }

  void add_term(Word w, Rational c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // Largest word under the graded-lex order (requires a nonzero expression).
  const Word& leading_word() const { return std::prev(terms_.end())->first; }

  friend bool operator==(const NcExpr&, const NcExpr&) = default;

  NcExpr& operator+=(const NcExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NcExpr& operator-=(const NcExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NcExpr operator+(NcExpr a, const NcExpr& b) { return a += b; }
  friend NcExpr operator-(NcExpr a, const NcExpr& b) { return a -= b; }
  friend NcExpr operator-(const NcExpr& a) { return NcExpr::scalar(-1) * a; }

  // Bilinear concatenation product.
  friend NcExpr operator*(const NcExpr& a, const NcExpr& b) {
    NcExpr out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    return out;
  }
  friend NcExpr operator*(const Rational& c, NcExpr e) {
    if (c == 0) return NcExpr();
    for (auto& [w, coeff] : e.terms_) coeff *= c;
    return e;
  }
  NcExpr& operator*=(const NcExpr& o) { return *this = *this * o; }

  // Total number of atoms across all words; a convenient size measure.
  size_t atom_count() const {
    size_t n = 0;
    for (const auto& [w, c] : terms_) n += w.size();
    return n;
  }

 private:
  Map terms_;
};

// Rebuilds an expression from scratch; the result equals the input for any
// well-formed expression since the representation is canonical already.
inline NcExpr normalize(const NcExpr& e) {
  NcExpr out;
  for (const auto& [w, c] : e.terms()) out.add_term(w, c);
  return out;
}

}  // namespace wnaforge
