#pragma once

#include <map>
#include <set>
#include <vector>

#include "wnaforge/lqrs.hpp"
#include "wnaforge/rewrite.hpp"

namespace wnaforge {

inline Symbol phi_symbol() { return Symbol{"phi", {}, false}; }
inline NcExpr phi() { return NcExpr::atom(Atom{phi_symbol(), {}}); }

// One evolution equation per (symbol, direction) pair. Right-hand sides may
// mention derivatives only in directions the system leaves free; directions
// the system owns must appear underived, or substitution would not settle.
class FlowSystem {
 public:
  struct Key {
    Symbol symbol;
    VarIndex var;
    auto operator<=>(const Key&) const = default;
  };

  void define(Symbol symbol, VarIndex var, NcExpr rhs) {
    flows_[Key{std::move(symbol), std::move(var)}] = std::move(rhs);
  }

  const std::map<Key, NcExpr>& flows() const { return flows_; }

  const NcExpr* lookup(const Symbol& s, const VarIndex& v) const {
    auto it = flows_.find(Key{s, v});
    return it == flows_.end() ? nullptr : &it->second;
  }

  std::set<VarIndex> vars() const {
    std::set<VarIndex> out;
    for (const auto& [k, rhs] : flows_) out.insert(k.var);
    return out;
  }

  // Contains-mode rules that push every owned derivative of a dynamic symbol
  // into its right-hand side, restricted to the allowed directions.
  std::vector<RewriteRule> substitution_rules(const std::set<VarIndex>& allowed) const {
    std::vector<RewriteRule> rules;
    for (const auto& [k, rhs] : flows_) {
      if (!allowed.contains(k.var)) continue;
      rules.push_back(
          RewriteRule::derivative_of("flow " + k.symbol.name + "/" + k.var.str(), k.symbol,
                                     {k.var}, rhs));
    }
    return rules;
  }
  std::vector<RewriteRule> substitution_rules() const { return substitution_rules(vars()); }

 private:
  std::map<Key, NcExpr> flows_;
};

// phi_{t_n} = S{n} + L{n} phi - phi R{n} - phi Q{n} phi.
inline NcExpr riccati_rhs(int n) {
  NcExpr p = phi();
  return grade_atom("S", n) + grade_atom("L", n) * p - p * grade_atom("R", n) -
         p * grade_atom("Q", n) * p;
}

// Deformation flow in closed form: substituting the Riccati flows into
//   1/2 (phi_{t_n} (R{m} + Q{m} phi) - phi_{t_m} (R{n} + Q{n} phi))
// leaves no derivatives, so the result can seed a flow system directly.
// Index order is antisymmetric; the stored direction is the ascending one.
inline NcExpr theta_flow_rhs(int m, int n) {
  auto [v, sign] = VarIndex::theta_oriented(m, n);
  int lo = v.idx[0], hi = v.idx[1];
  NcExpr p = phi();
  NcExpr e = riccati_rhs(hi) * (grade_atom("R", lo) + grade_atom("Q", lo) * p) -
             riccati_rhs(lo) * (grade_atom("R", hi) + grade_atom("Q", hi) * p);
  return Rational(sign, 2) * e;
}

// Same deformation flow before substitution, as written along the t-flows.
inline NcExpr theta_derivative_form(int m, int n) {
  auto [v, sign] = VarIndex::theta_oriented(m, n);
  int lo = v.idx[0], hi = v.idx[1];
  NcExpr p = phi();
  NcExpr e = apply_derivative(VarIndex::time(hi), p) *
                 (grade_atom("R", lo) + grade_atom("Q", lo) * p) -
             apply_derivative(VarIndex::time(lo), p) *
                 (grade_atom("R", hi) + grade_atom("Q", hi) * p);
  return Rational(sign, 2) * e;
}

// phi_{t_{(m1,...,mr)}} = (-1)^(r-1) F_{m1} prod_{j>=2} (R{mj} + Q{mj} phi)
// where F is the Riccati right-hand side; equivalently each appended index
// multiplies by -(R + Q phi) at that grade.
inline NcExpr composition_flow_rhs(const std::vector<int>& word) {
  if (word.empty()) throw ConfigError("empty time word");
  NcExpr e = riccati_rhs(word[0]);
  for (size_t j = 1; j < word.size(); ++j)
    e = -(e * (grade_atom("R", word[j]) + grade_atom("Q", word[j]) * phi()));
  return e;
}

inline NcExpr flow_rhs(const VarIndex& v) {
  if (v.is_theta()) return theta_flow_rhs(v.idx[0], v.idx[1]);
  if (v.idx.size() == 1) return riccati_rhs(v.idx[0]);
  return composition_flow_rhs(v.idx);
}

struct RiccatiSystemOptions {
  int max_time = 4;                          // plain flows t_1..t_max
  std::vector<std::pair<int, int>> thetas;   // deformation directions
  std::vector<std::vector<int>> words;       // composition directions
  bool with_word_prefixes = true;            // also define every proper prefix
};

inline FlowSystem make_riccati_system(const RiccatiSystemOptions& opts) {
  FlowSystem sys;
  Symbol p = phi_symbol();
  int max_time = opts.max_time;
  for (auto [m, n] : opts.thetas) max_time = std::max({max_time, m, n});
  for (const auto& w : opts.words)
    for (int m : w) max_time = std::max(max_time, m);
  for (int n = 1; n <= max_time; ++n) sys.define(p, VarIndex::time(n), riccati_rhs(n));
  for (auto [m, n] : opts.thetas)
    sys.define(p, VarIndex::theta(m, n), theta_flow_rhs(m, n));
  for (const auto& w : opts.words) {
    size_t from = opts.with_word_prefixes ? 2 : w.size();
    for (size_t len = from; len <= w.size(); ++len) {
      std::vector<int> prefix(w.begin(), w.begin() + len);
      sys.define(p, VarIndex::time(prefix), composition_flow_rhs(prefix));
    }
  }
  return sys;
}

}  // namespace wnaforge
