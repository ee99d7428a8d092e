#pragma once

#include <functional>

#include "wnaforge/star.hpp"

namespace wnaforge {

// Strictly increasing minor sum for a word w = (m_1..m_n):
//   M_w = sum_{r_1 < ... < r_n} k_{r_1}^{m_1} ... k_{r_n}^{m_n},
// zero when the word is longer than the value list.
inline Rational minor_sum(const std::vector<Rational>& ks, const std::vector<int>& word) {
  std::vector<std::vector<Rational>> memo(word.size() + 1,
                                          std::vector<Rational>(ks.size() + 1, Rational(0)));
  for (size_t r = 0; r <= ks.size(); ++r) memo[word.size()][r] = Rational(1);
  for (size_t i = word.size(); i-- > 0;) {
    for (size_t r = ks.size(); r-- > 0;) {
      Rational pw(1);
      for (int p = 0; p < word[i]; ++p) pw *= ks[r];
      memo[i][r] = memo[i][r + 1] + pw * memo[i + 1][r + 1];
    }
  }
  return memo[0][0];
}

// p_n from power-sum style weights: n p_n = sum_j w_j p_{n-j}, p_0 = 1.
inline Rational schur_value(int n, const std::vector<Rational>& w) {
  std::vector<Rational> p(static_cast<size_t>(n) + 1, Rational(0));
  p[0] = Rational(1);
  for (int i = 1; i <= n; ++i) {
    Rational acc(0);
    for (int j = 1; j <= i && static_cast<size_t>(j) <= w.size(); ++j)
      acc += w[static_cast<size_t>(j) - 1] * p[static_cast<size_t>(i - j)];
    p[static_cast<size_t>(i)] = Rational(1, i) * acc;
  }
  return p[static_cast<size_t>(n)];
}

// All time words over the alphabet 1..max_m with length 1..level, in the
// order the ring builder expects.
inline std::vector<VarIndex> word_alphabet(int max_m, int level) {
  std::vector<VarIndex> vars;
  std::vector<int> word;
  std::function<void()> grow = [&]() {
    if (!word.empty()) vars.push_back(VarIndex::time(word));
    if (static_cast<int>(word.size()) == level) return;
    for (int m = 1; m <= max_m; ++m) {
      word.push_back(m);
      grow();
      word.pop_back();
    }
  };
  grow();
  return vars;
}

// The composed product of plain exponentials stays exponential, with every
// composite word weighted by its minor sum:
//   prod_* over r of exp(sum_m t_m k_r^m) = exp(sum_w t_w M_w).
// Returns the difference of the two sides.
inline Jet xi_product_residual(const std::vector<Rational>& ks, int max_m, int level,
                               int order) {
  JetRing ring(word_alphabet(max_m, level), order);
  StarSpec star = StarSpec::composed(ring, level);
  Jet lhs = Jet::scalar(ring, Rational(1));
  for (const Rational& k : ks) {
    Jet arg(ring);
    for (int m = 1; m <= max_m; ++m) {
      Rational pw(1);
      for (int p = 0; p < m; ++p) pw *= k;
      arg += pw * Jet::variable(ring, VarIndex::time(m));
    }
    lhs = star_mul(lhs, arg.exp(), star);
  }
  Jet rhs_arg(ring);
  for (size_t s = 0; s < ring.size(); ++s)
    rhs_arg += minor_sum(ks, ring.var(s).idx) * Jet::variable(ring, ring.var(s));
  return lhs - rhs_arg.exp();
}

// Ones-word minor sums against the signed Schur evaluation of power sums:
// (-1)^n p_n(-M~) with M~_j = M_(j)/j reproduces M_(1^n).
inline bool newton_minor_check(const std::vector<Rational>& ks, int n) {
  std::vector<Rational> w;
  for (int j = 1; j <= n; ++j) {
    Rational ps(0);
    for (const Rational& k : ks) {
      Rational pw(1);
      for (int p = 0; p < j; ++p) pw *= k;
      ps += pw;
    }
    w.push_back(Rational(-1) * ps);
  }
  Rational lhs = Rational(n % 2 == 0 ? 1 : -1) * schur_value(n, w);
  return lhs == minor_sum(ks, std::vector<int>(static_cast<size_t>(n), 1));
}

}  // namespace wnaforge
