#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "wnaforge/derivation.hpp"

namespace wnaforge {

// Polynomial in commuting derivative operators, keyed by the sorted multiset
// of directions. The empty multiset is the identity operator.
class SchurOp {
 public:
  using Key = std::vector<VarIndex>;

  static SchurOp identity() {
    SchurOp op;
    op.terms_[{}] = Rational(1);
    return op;
  }
  static SchurOp derivative(VarIndex v, Rational coeff = Rational(1)) {
    SchurOp op;
    op.terms_[{std::move(v)}] = std::move(coeff);
    return op;
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Key key, const Rational& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(std::move(key), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  SchurOp& operator+=(const SchurOp& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend SchurOp operator+(SchurOp a, const SchurOp& b) { return a += b; }
  friend SchurOp operator-(SchurOp a, const SchurOp& b) { return a += Rational(-1) * b; }
  friend SchurOp operator*(const Rational& c, const SchurOp& o) {
    SchurOp out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : o.terms_) out.terms_[k] = c * v;
    return out;
  }
  // Operators commute, so composition merges the direction multisets.
  friend SchurOp operator*(const SchurOp& a, const SchurOp& b) {
    SchurOp out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k;
        k.reserve(ka.size() + kb.size());
        std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(k));
        out.add_term(std::move(k), ca * cb);
      }
    return out;
  }
  friend bool operator==(const SchurOp&, const SchurOp&) = default;

  NcExpr apply(const NcExpr& e, const DerivationRules& rules = DerivationRules::standard()) const {
    NcExpr out;
    for (const auto& [k, c] : terms_) out += c * apply_derivative(k, e, rules);
    return out;
  }

 private:
  std::map<Key, Rational> terms_;
};

// Elementary Schur polynomial p_n evaluated at generators given through their
// weighted form w_j = j * x_j, via n p_n(x) = sum_j w_j p_{n-j}(x).
inline SchurOp schur_from_weighted(int n, const std::vector<SchurOp>& weighted) {
  if (n < 0) return SchurOp();
  std::vector<SchurOp> p(static_cast<size_t>(n) + 1);
  p[0] = SchurOp::identity();
  for (int i = 1; i <= n; ++i) {
    SchurOp acc;
    for (int j = 1; j <= i; ++j) {
      if (static_cast<size_t>(j) > weighted.size()) break;
      acc += weighted[static_cast<size_t>(j) - 1] * p[static_cast<size_t>(i - j)];
    }
    p[static_cast<size_t>(i)] = Rational(1, i) * acc;
  }
  return p[static_cast<size_t>(n)];
}

// p_n evaluated at (sign d_1, sign d_2 / 2, sign d_3 / 3, ...): the weighted
// generators are sign * d_j.
inline SchurOp schur_operator(int n, int sign = 1) {
  if (n < 0) throw ConfigError("schur operator index must be nonnegative");
  std::vector<SchurOp> weighted;
  for (int j = 1; j <= n; ++j)
    weighted.push_back(SchurOp::derivative(VarIndex::time(j), Rational(sign)));
  return schur_from_weighted(n, weighted);
}

inline VarIndex ones_word(int k) { return VarIndex::time(std::vector<int>(k, 1)); }

// Ordinary derivations recovered from the repeated-index family by inverting
//   d_{t_{1^k}} = (-1)^k p_k(-eth~)
// order by order: eth_k = -k (-1)^k d_{t_{1^k}} - sum_{j<k} (-1)^{k-j} eth_j d_{t_{1^{k-j}}}.
inline SchurOp eth_operator(int k) {
  if (k < 1) throw ConfigError("eth operator index must be positive");
  std::vector<SchurOp> eth(static_cast<size_t>(k));
  for (int i = 1; i <= k; ++i) {
    int sign_i = i % 2 == 0 ? 1 : -1;
    SchurOp acc = Rational(-i * sign_i) * SchurOp::derivative(ones_word(i));
    for (int j = 1; j < i; ++j) {
      int sign = (i - j) % 2 == 0 ? 1 : -1;
      acc += Rational(-sign) * (eth[static_cast<size_t>(j) - 1] *
                                SchurOp::derivative(ones_word(i - j)));
    }
    eth[static_cast<size_t>(i) - 1] = acc;
  }
  return eth[static_cast<size_t>(k) - 1];
}

}  // namespace wnaforge
