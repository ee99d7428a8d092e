#pragma once

#include "wnaforge/residuals.hpp"

namespace wnaforge {

namespace detail {

inline void hat_rec(const Jet& g, const JetRing& out_ring, size_t out_slot,
                    int budget, const Rational& coeff, JetKey out_key,
                    size_t t1_in_slot, size_t t1_out_slot,
                    std::vector<std::pair<JetKey, Rational>>& acc) {
  const JetRing& in_ring = g.ring();
  if (out_slot == out_ring.size()) {
    for (const auto& [k, c] : g.terms()) {
      bool pure = true;
      for (size_t s = 0; s < in_ring.size() && pure; ++s)
        if (s != t1_in_slot && JetRing::exponent(k, s) != 0) pure = false;
      if (!pure) continue;
      int e = JetRing::exponent(k, t1_in_slot);
      if (e > budget) continue;
      acc.emplace_back(out_key + (JetKey(e) << (8 * t1_out_slot)), coeff * c);
    }
    return;
  }
  if (out_slot == t1_out_slot) {
    hat_rec(g, out_ring, out_slot + 1, budget, coeff, out_key, t1_in_slot, t1_out_slot, acc);
    return;
  }
  int k = out_ring.var(out_slot).idx[0];
  SchurOp eth = eth_operator(k);
  Jet cur = g;
  Rational c = coeff;
  for (int a = 0;; ++a) {
    if (a > 0) {
      cur = apply_op(eth, cur);
      c = c / Rational(a);
      if (cur.is_zero()) break;
    }
    hat_rec(cur, out_ring, out_slot + 1, budget - a, c,
            out_key + (JetKey(a) << (8 * out_slot)), t1_in_slot, t1_out_slot, acc);
    if (a == budget) break;
  }
}

}  // namespace detail

// Rebuild multi-time dependence from the repeated-index tower:
//   hat(g) = sum_alpha prod_k t_k^{a_k} / a_k! (eth_2^{a_2} ... g) |_{tower -> t_1}
// maps a jet on the ones-word ring to the single-time output ring. Exact
// agreement with the closed multi-time solution needs the tower order to be
// at least the largest weight the inverted derivations remove, i.e.
// top * out_order.
inline Jet hat_transform(const Jet& g, const JetRing& out_ring) {
  const JetRing& in_ring = g.ring();
  size_t t1_out = out_ring.size();
  for (size_t s = 0; s < out_ring.size(); ++s) {
    const VarIndex& v = out_ring.var(s);
    if (v.kind != VarIndex::Kind::Time || v.idx.size() != 1)
      throw ConfigError("the rebuilt ring must carry single times only");
    int k = v.idx[0];
    if (k == 1) t1_out = s;
    for (int j = 1; j <= k; ++j)
      if (!in_ring.has_var(ones_word(j)))
        throw ConfigError("tower ring lacks " + ones_word(j).str());
  }
  if (t1_out == out_ring.size())
    throw ConfigError("the rebuilt ring must contain the first time");
  std::vector<std::pair<JetKey, Rational>> acc;
  detail::hat_rec(g, out_ring, 0, out_ring.order(), Rational(1), 0,
                  in_ring.var_slot(VarIndex::time(1)), t1_out, acc);
  return Jet::from_accumulated(out_ring, std::move(acc));
}

inline MatrixJet hat_transform(const MatrixJet& g, const JetRing& out_ring) {
  MatrixJet out(out_ring, g.rows(), g.cols());
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j) out.at(i, j) = hat_transform(g.at(i, j), out_ring);
  return out;
}

}  // namespace wnaforge
