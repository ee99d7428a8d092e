#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "wnaforge/render.hpp"
#include "wnaforge/schur.hpp"

namespace wnaforge {

// Raised when the bare generator f cannot be eliminated from a product at the
// configured table depth.
struct IrreducibleError : std::runtime_error {
  explicit IrreducibleError(const std::string& what) : std::runtime_error(what) {}
};

inline Atom h_symbol_atom(int k) { return Atom{Symbol{"h", {k}, false}, {}}; }
inline NcExpr h_symbol(int k) { return NcExpr::atom(h_symbol_atom(k)); }

// Two-parameter family h^(n)_m: iterated grade-1 left multiplication by f on
// the grade-n square f o_n f. The n = 1 slice collapses onto h_{m+1}.
inline NcExpr h_family(int n, int m) {
  if (n < 1 || m < 0) throw ConfigError("h family needs n >= 1, m >= 0");
  if (n == 1) return h_symbol(m + 1);
  return NcExpr::atom(Atom{Symbol{"h", {n, m}, false}, {}});
}

// Memoized reduction of the h family to the single-index symbols h{k} and
// their t-derivatives, then to f-derivatives through the Schur substitution
// h_k = p_k(d_1, d_2/2, d_3/3, ...) f.
class HTable {
 public:
  explicit HTable(int max_depth = 8) : max_depth_(max_depth) {}

  int max_depth() const { return max_depth_; }

  // h^(n)_m over h{k} atoms and their derivatives.
  const NcExpr& expand(int n, int m) {
    if (n < 2 || m < 0) throw ConfigError("h family expansion needs n >= 2, m >= 0");
    if (n + m > max_depth_)
      throw IrreducibleError("bare generator survives in h{" + std::to_string(n) +
                             "," + std::to_string(m) + "}: table depth " +
                             std::to_string(max_depth_) + " exceeded");
    auto key = std::make_pair(n, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    int r = n - 1;
    NcExpr e = h_symbol(m + n);
    e += family(r, m + 1);
    e += Rational(-1) * apply_derivative(VarIndex::time(r), h_symbol(m + 1));
    for (int k = 1; k <= m; ++k) e += family(r, k - 1) * h_symbol(m - k + 1);
    for (int k = 1; k <= r - 1; ++k)
      e += Rational(-1) * (family(r - k, m) * h_symbol(k));
    return memo_.emplace(std::move(key), std::move(e)).first->second;
  }

  // Replace every two-index h atom by its expansion; derivatives carry over.
  NcExpr reduce(const NcExpr& e) {
    NcExpr out;
    for (const auto& [word, c] : e.terms()) {
      NcExpr prod = NcExpr::scalar(c);
      for (const Atom& a : word) {
        if (a.symbol.name == "h" && a.symbol.sub.size() == 2) {
          NcExpr body = expand(a.symbol.sub[0], a.symbol.sub[1]);
          prod = prod * apply_derivative(a.derivs, body);
        } else {
          prod = prod * NcExpr::atom(a);
        }
      }
      out += prod;
    }
    return out;
  }

  // Substitute h{k} atoms by their f-derivative form.
  NcExpr schur_form(const NcExpr& e) {
    NcExpr out;
    for (const auto& [word, c] : e.terms()) {
      NcExpr prod = NcExpr::scalar(c);
      for (const Atom& a : word) {
        if (a.symbol.name == "h" && a.symbol.sub.size() == 1) {
          prod = prod * apply_derivative(a.derivs, schur_base(a.symbol.sub[0]));
        } else if (a.symbol.name == "h") {
          throw ConfigError("unreduced h atom in schur substitution: " +
                            render_plain(NcExpr::atom(a)));
        } else {
          prod = prod * NcExpr::atom(a);
        }
      }
      out += prod;
    }
    return out;
  }

  // h^(n)_m fully in f-derivatives, juxtaposition meaning the grade-1 product.
  NcExpr table(int n, int m) { return schur_form(reduce(h_family(n, m))); }

 private:
  NcExpr family(int n, int m) { return n == 1 ? h_symbol(m + 1) : expand(n, m); }

  const NcExpr& schur_base(int k) {
    auto it = schur_memo_.find(k);
    if (it != schur_memo_.end()) return it->second;
    NcExpr f = NcExpr::atom(Atom{Symbol{"f", {}, false}, {}});
    return schur_memo_.emplace(k, schur_operator(k).apply(f)).first->second;
  }

  int max_depth_;
  std::map<std::pair<int, int>, NcExpr> memo_;
  std::map<int, NcExpr> schur_memo_;
};

}  // namespace wnaforge
