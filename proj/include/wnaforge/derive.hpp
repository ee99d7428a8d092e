#pragma once

#include <vector>

#include "wnaforge/h_table.hpp"

namespace wnaforge {

namespace detail {

// Grade-1 left multiplication by f, iterated count times. Reassociating onto
// the first factor is valid because every remaining factor sits in the
// nucleus, and on the h family it acts symbolically:
//   f o h_k = h_{k+1},  f o h^(n)_m = h^(n)_{m+1}.
inline NcExpr f_left_power(const NcExpr& e, int count) {
  if (count == 0) return e;
  NcExpr out;
  for (const auto& [word, c] : e.terms()) {
    if (word.empty())
      throw IrreducibleError("bare generator multiplies a scalar term");
    const Atom& head = word.front();
    if (head.symbol.name != "h" || !head.derivs.empty())
      throw IrreducibleError("bare generator blocked on " +
                             render_plain(NcExpr::word(word)));
    Atom bumped = head;
    bumped.symbol.sub.back() += count;
    Word w = word;
    w.front() = bumped;
    out.add_term(std::move(w), c);
  }
  return out;
}

// f o_n x through the closed expansion
//   f o_n x = L_f^n x - sum_{k=1}^{n-1} p_{n-k} o L_f^{k-1} x,  p_j = f o_j f.
inline NcExpr f_left_product(int n, const NcExpr& x) {
  NcExpr out = f_left_power(x, n);
  for (int k = 1; k <= n - 1; ++k)
    out += Rational(-1) * (h_family(n - k, 0) * f_left_power(x, k - 1));
  return out;
}

// The nested chain f o_{b1} (f o_{b2} ( ... (f o_{bj} f))) over the h family.
inline NcExpr f_chain(const std::vector<int>& blocks) {
  if (blocks.empty()) throw ConfigError("empty product chain");
  NcExpr x = h_family(blocks.back(), 0);
  for (auto it = blocks.rbegin() + 1; it != blocks.rend(); ++it)
    x = f_left_product(*it, x);
  return x;
}

}  // namespace detail

// Convert an identity f_t = rhs over f-derivative products into the matrix
// family: d^a f = -d^a phi for nonempty a, the grade-1 product inserts the
// coupling Q, and the overall sign flips with the left-hand side.
inline NcExpr phi_form(const NcExpr& f_rhs) {
  Atom q{Symbol{"Q", {}, true}, {}};
  NcExpr out;
  for (const auto& [word, c] : f_rhs.terms()) {
    if (word.empty())
      throw ConfigError("scalar term has no matrix image");
    Word w;
    for (const Atom& a : word) {
      if (a.symbol.name != "f")
        throw ConfigError("unexpected symbol in f-derivative form: " +
                          render_plain(NcExpr::word(word)));
      if (a.derivs.empty())
        throw IrreducibleError("bare generator survives in " +
                               render_plain(NcExpr::word(word)));
      if (!w.empty()) w.push_back(q);
      Atom p = a;
      p.symbol.name = "phi";
      w.push_back(std::move(p));
    }
    int sign = word.size() % 2 == 0 ? -1 : 1;
    out.add_term(std::move(w), Rational(sign) * c);
  }
  return out;
}

struct DerivedEquation {
  VarIndex var;
  NcExpr f_rhs;    // over f-derivatives, juxtaposition = grade-1 product
  NcExpr phi_rhs;  // over phi-derivatives with Q couplings
};

// theta_{mn} flow of f: 1/2 (f o_m (f o_n f) - f o_n (f o_m f)), reduced to
// f-derivatives through the h family and the Schur substitution.
inline DerivedEquation derive_theta_equation(int m, int n, HTable& table) {
  if (m >= n) throw ConfigError("deformation indices must be ordered m < n");
  NcExpr h = Rational(1, 2) * (detail::f_chain({m, n}) - detail::f_chain({n, m}));
  NcExpr f_rhs = table.schur_form(table.reduce(h));
  return {VarIndex::theta(m, n), f_rhs, phi_form(f_rhs)};
}

inline DerivedEquation derive_theta_equation(int m, int n) {
  HTable table;
  return derive_theta_equation(m, n, table);
}

// t_w flow of f for a composition word w = (m_1, ..., m_k): the right-bracketed
// product ((f o_{m_1} f) o_{m_2} f) ... o_{m_k} f unfolds over the ways of
// merging adjacent indices,
//   sum over block decompositions, sign (-1)^(k - #blocks),
//   f o_{s_1} (f o_{s_2} ( ... (f o_{s_j} f))) with s_i the block sums.
inline DerivedEquation derive_composition_equation(const std::vector<int>& word,
                                                   HTable& table) {
  if (word.size() < 2) throw ConfigError("composition word needs at least two indices");
  size_t gaps = word.size() - 1;
  NcExpr h;
  for (size_t mask = 0; mask < (size_t{1} << gaps); ++mask) {
    std::vector<int> blocks{word[0]};
    size_t merges = 0;
    for (size_t i = 0; i < gaps; ++i) {
      if (mask & (size_t{1} << i)) {
        blocks.back() += word[i + 1];
        ++merges;
      } else {
        blocks.push_back(word[i + 1]);
      }
    }
    Rational sign(merges % 2 == 0 ? 1 : -1);
    h += sign * detail::f_chain(blocks);
  }
  NcExpr f_rhs = table.schur_form(table.reduce(h));
  return {VarIndex::time(word), f_rhs, phi_form(f_rhs)};
}

inline DerivedEquation derive_composition_equation(const std::vector<int>& word) {
  HTable table;
  return derive_composition_equation(word, table);
}

}  // namespace wnaforge
