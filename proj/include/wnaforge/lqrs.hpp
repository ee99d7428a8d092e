#pragma once

#include <map>
#include <string>

#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

// The grade-n coefficient letters. Grade one renders without a subscript so
// parsed input and generated expressions agree.
inline Symbol grade_symbol(const std::string& name, int n) {
  if (n < 1) throw ConfigError("coefficient grade must be positive");
  if (n == 1) return Symbol{name, {}, true};
  return Symbol{name, {n}, true};
}

inline NcExpr grade_atom(const std::string& name, int n) {
  return NcExpr::atom(Atom{grade_symbol(name, n), {}});
}

struct LqrsOptions {
  bool s_zero = false;        // drop S; the letters degenerate to plain powers
  bool q_telescoped = false;  // substitute Q = R*K - K*L
};

// Expands the grade-n letters into words in the grade-one letters through
//   L{a+b} = L{a}L{b} + S{a}Q{b}     Q{a+b} = R{a}Q{b} + Q{a}L{b}
//   R{a+b} = R{a}R{b} + Q{a}S{b}     S{a+b} = L{a}S{b} + S{a}R{b}
// split off at a = 1.
class LqrsTable {
 public:
  explicit LqrsTable(LqrsOptions opts = {}) : opts_(opts) {}

  const LqrsOptions& options() const { return opts_; }

  const NcExpr& expand(const std::string& name, int n) {
    if (n < 1) throw ConfigError("coefficient grade must be positive");
    auto key = std::make_pair(name, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    NcExpr e = compute(name, n);
    return memo_.emplace(std::move(key), std::move(e)).first->second;
  }

  // Substitutes every graded letter in e by its grade-one expansion.
  NcExpr expand_grades(const NcExpr& e) {
    NcExpr out;
    for (const auto& [w, c] : e.terms()) {
      NcExpr term = NcExpr::scalar(c);
      for (const Atom& a : w) {
        if (a.derivs.empty() && is_graded_letter(a.symbol))
          term = term * expand(a.symbol.name, a.symbol.sub.empty() ? 1 : a.symbol.sub[0]);
        else
          term = term * NcExpr::atom(a);
      }
      out += term;
    }
    return out;
  }

  static bool is_graded_letter(const Symbol& s) {
    if (s.sub.size() > 1) return false;
    return s.name == "L" || s.name == "Q" || s.name == "R" || s.name == "S";
  }

 private:
  LqrsOptions opts_;
  std::map<std::pair<std::string, int>, NcExpr> memo_;

  NcExpr base_letter(const std::string& name) const {
    if (name == "S" && opts_.s_zero) return NcExpr::zero();
    if (name == "Q" && opts_.q_telescoped)
      return grade_atom("R", 1) * grade_atom("K", 1) - grade_atom("K", 1) * grade_atom("L", 1);
    return grade_atom(name, 1);
  }

  NcExpr compute(const std::string& name, int n) {
    if (n == 1) return base_letter(name);
    const NcExpr& L1 = expand("L", 1);
    const NcExpr& Q1 = expand("Q", 1);
    const NcExpr& R1 = expand("R", 1);
    const NcExpr& S1 = expand("S", 1);
    if (name == "L") return L1 * expand("L", n - 1) + S1 * expand("Q", n - 1);
    if (name == "Q") return R1 * expand("Q", n - 1) + Q1 * expand("L", n - 1);
    if (name == "R") return R1 * expand("R", n - 1) + Q1 * expand("S", n - 1);
    if (name == "S") return L1 * expand("S", n - 1) + S1 * expand("R", n - 1);
    throw ConfigError("unknown coefficient letter '" + name + "'");
  }
};

}  // namespace wnaforge
