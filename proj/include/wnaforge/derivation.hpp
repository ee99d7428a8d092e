#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

struct MissingRuleError : std::runtime_error {
  VarIndex var;
  explicit MissingRuleError(const VarIndex& v)
      : std::runtime_error("no derivation rule configured for variable class of " + v.str()),
        var(v) {}
};

// One splitting: d(a*b) gains coeff * (dL a) * (dR b), where an absent
// operator means the identity.
struct SplitTerm {
  Rational coeff;
  std::optional<VarIndex> left, right;
};

// Generalized Leibniz rule for one variable, as its list of splittings.
struct DerivationRule {
  VarIndex var;
  std::vector<SplitTerm> splits;
};

// Standard rule for any variable:
//   t_m:        d(ab) = (da)b + a(db)
//   th_{mn}:    d(ab) = (da)b + a(db) + 1/2 (d_{t_m}a)(d_{t_n}b)
//                                     - 1/2 (d_{t_n}a)(d_{t_m}b)
//   t_{m1..mr}: d(ab) = sum_{k=0..r} (d_{t_{m1..mk}}a)(d_{t_{m_{k+1}..mr}}b)
// The composition rule contains the Hasse-Schmidt chain as the special case
// m1 = ... = mr = 1.
inline DerivationRule standard_rule(const VarIndex& v) {
  DerivationRule rule{v, {}};
  if (v.is_theta()) {
    VarIndex tm = VarIndex::time(v.idx[0]), tn = VarIndex::time(v.idx[1]);
    rule.splits = {{1, v, std::nullopt},
                   {1, std::nullopt, v},
                   {Rational(1) / 2, tm, tn},
                   {Rational(-1) / 2, tn, tm}};
    return rule;
  }
  const auto& w = v.idx;
  size_t r = w.size();
  for (size_t k = 0; k <= r; ++k) {
    SplitTerm s{1, std::nullopt, std::nullopt};
    if (k > 0) s.left = VarIndex::time(std::vector<int>(w.begin(), w.begin() + k));
    if (k < r) s.right = VarIndex::time(std::vector<int>(w.begin() + k, w.end()));
    rule.splits.push_back(std::move(s));
  }
  return rule;
}

// Rule registry. The standard registry synthesizes the canonical rule for
// any variable on demand; a restricted registry holds only explicit rules
// and reports unconfigured variable classes.
class DerivationRules {
 public:
  static DerivationRules standard() { return DerivationRules(true); }
  static DerivationRules restricted() { return DerivationRules(false); }

  void add(DerivationRule rule) { explicit_[rule.var] = std::move(rule); }

  DerivationRule lookup(const VarIndex& v) const {
    if (auto it = explicit_.find(v); it != explicit_.end()) return it->second;
    if (!auto_standard_) throw MissingRuleError(v);
    return standard_rule(v);
  }

 private:
  explicit DerivationRules(bool auto_standard) : auto_standard_(auto_standard) {}
  bool auto_standard_;
  std::map<VarIndex, DerivationRule> explicit_;
};

namespace detail {

inline NcExpr derive_atom(const VarIndex& v, const Atom& a) {
  if (a.symbol.constant) return NcExpr::zero();
  return NcExpr::atom(a.with_derivative(v));
}

inline NcExpr derive_word(const VarIndex& v, const Word& w, const DerivationRules& rules);

inline NcExpr derive_tail(const std::optional<VarIndex>& op, const Word& w,
                          const DerivationRules& rules) {
  if (!op) return NcExpr::word(w);
  return derive_word(*op, w, rules);
}

inline NcExpr derive_word(const VarIndex& v, const Word& w, const DerivationRules& rules) {
  if (w.empty()) return NcExpr::zero();
  if (w.size() == 1) return derive_atom(v, w[0]);
  DerivationRule rule = rules.lookup(v);
  Word head{w[0]};
  Word tail(w.begin() + 1, w.end());
  NcExpr out;
  for (const auto& s : rule.splits) {
    NcExpr l = s.left ? derive_atom(*s.left, w[0]) : NcExpr::word(head);
    if (l.is_zero()) continue;
    NcExpr r = derive_tail(s.right, tail, rules);
    if (r.is_zero()) continue;
    out += s.coeff * (l * r);
  }
  return out;
}

}  // namespace detail

inline NcExpr apply_derivative(const VarIndex& v, const NcExpr& e,
                               const DerivationRules& rules = DerivationRules::standard()) {
  NcExpr out;
  for (const auto& [w, c] : e.terms()) out += c * detail::derive_word(v, w, rules);
  return out;
}

inline NcExpr apply_derivative(const std::vector<VarIndex>& multiset, const NcExpr& e,
                               const DerivationRules& rules = DerivationRules::standard()) {
  NcExpr out = e;
  for (const auto& v : multiset) out = apply_derivative(v, out, rules);
  return out;
}

}  // namespace wnaforge
