#pragma once

#include <optional>

#include "wnaforge/matrix_jet.hpp"

namespace wnaforge {

// One generator of the deformation exponential: c * factor * (d_left (x) d_right).
// The optional factor is a ring variable multiplying the product from outside;
// the derivatives act on the original arguments (normal ordering), which is
// what makes the index-splitting Leibniz rules hold.
struct StarPair {
  Rational c;
  std::optional<VarIndex> factor;
  VarIndex left, right;
};

// u * v = m(exp(sum of pairs)(u (x) v)). An empty pair list is the ordinary
// product. Every pair is weight-neutral: the factor's weight equals the
// weight its two derivatives remove, so truncation by weighted degree is
// exact.
struct StarSpec {
  std::vector<StarPair> pairs;

  static StarSpec ordinary() { return {}; }

  // Deformation of the (t_m, t_n) plane:
  //   exp(c/2 (d_m (x) d_n - d_n (x) d_m)),
  // with c either a formal ring variable (th{m,n}) or a rational value.
  static StarSpec moyal(int m, int n, std::optional<VarIndex> formal,
                        Rational value = Rational(1)) {
    StarSpec s;
    VarIndex tm = VarIndex::time(m), tn = VarIndex::time(n);
    s.pairs.push_back({value / Rational(2), formal, tm, tn});
    s.pairs.push_back({Rational(-1) * value / Rational(2), formal, tn, tm});
    return s;
  }

  // Product deformed along every composite time word the ring carries, up to
  // the given word length: each word w contributes t_w sum over proper splits
  // d_prefix (x) d_suffix. Rings must contain the split directions.
  static StarSpec composed(const JetRing& ring, int level) {
    if (level < 2) throw ConfigError("composed star needs level >= 2");
    StarSpec s;
    for (size_t i = 0; i < ring.size(); ++i) {
      const VarIndex& v = ring.var(i);
      if (v.kind != VarIndex::Kind::Time) continue;
      size_t len = v.idx.size();
      if (len < 2) continue;
      if (static_cast<int>(len) > level)
        throw ConfigError("ring variable " + v.str() +
                          " exceeds the composed star level");
      for (size_t r = 1; r < len; ++r) {
        VarIndex pre = VarIndex::time(std::vector<int>(v.idx.begin(), v.idx.begin() + r));
        VarIndex suf = VarIndex::time(std::vector<int>(v.idx.begin() + r, v.idx.end()));
        if (!ring.has_var(pre) || !ring.has_var(suf))
          throw ConfigError("ring is not split-closed: " + v.str() + " needs " +
                            pre.str() + " and " + suf.str());
        s.pairs.push_back({Rational(1), v, pre, suf});
      }
    }
    return s;
  }
};

namespace detail {

// Keeps transient memory bounded: terms collapse to at most one per ring
// monomial on each flush.
constexpr size_t kStarFlushThreshold = size_t(1) << 21;

inline void star_rec(const std::vector<StarPair>& pairs, size_t i, const Jet& u,
                     const Jet& v, const Rational& coeff, JetKey factor_key,
                     int factor_weight, std::vector<std::pair<JetKey, Rational>>& acc) {
  const JetRing& ring = u.ring();
  if (i == pairs.size()) {
    Jet::multiply_into(acc, u, v, coeff, factor_key, factor_weight);
    if (acc.size() >= kStarFlushThreshold) Jet::combine_in_place(acc);
    return;
  }
  star_rec(pairs, i + 1, u, v, coeff, factor_key, factor_weight, acc);
  const StarPair& p = pairs[i];
  JetKey fkey = factor_key;
  int fweight = factor_weight;
  JetKey funit = 0;
  int funit_w = 0;
  if (p.factor) {
    size_t slot = ring.var_slot(*p.factor);
    funit = JetRing::unit(slot);
    funit_w = ring.weight(slot);
  }
  Jet du = u, dv = v;
  Rational c = coeff;
  for (int j = 1;; ++j) {
    du = du.partial(p.left);
    dv = dv.partial(p.right);
    if (du.is_zero() || dv.is_zero()) break;
    c *= p.c / Rational(j);
    fkey += funit;
    fweight += funit_w;
    if (fweight > ring.order()) break;
    star_rec(pairs, i + 1, du, dv, c, fkey, fweight, acc);
  }
}

}  // namespace detail

inline Jet star_mul(const Jet& u, const Jet& v, const StarSpec& spec) {
  if (spec.pairs.empty()) return u * v;
  std::vector<std::pair<JetKey, Rational>> acc;
  detail::star_rec(spec.pairs, 0, u, v, Rational(1), 0, 0, acc);
  return Jet::from_accumulated(u.ring(), std::move(acc));
}

inline MatrixJet star_mul(const MatrixJet& a, const MatrixJet& b, const StarSpec& spec) {
  if (spec.pairs.empty()) return a * b;
  if (a.cols() != b.rows()) throw ConfigError("matrix size mismatch in star product");
  MatrixJet out(a.ring(), a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += star_mul(a.at(i, k), b.at(k, j), spec);
    }
  return out;
}

// Two-sided star inverse by Newton iteration; needs an invertible constant
// part. An iterate correct through weight m only needs inputs through
// weight 2m + 1, so each step works on truncated operands.
inline MatrixJet star_inv(const MatrixJet& a, const StarSpec& spec) {
  if (a.rows() != a.cols()) throw ConfigError("star inverse needs a square matrix");
  const JetRing& ring = a.ring();
  MatrixJet b = MatrixJet::constant(ring, mat_inverse(a.constant_part()));
  MatrixJet id = MatrixJet::identity(ring, a.rows());
  int correct = 0;
  while (correct < ring.order()) {
    int next = std::min(ring.order(), 2 * correct + 1);
    MatrixJet err = (id - star_mul(a.truncated(next), b, spec)).truncated(next);
    if (!err.is_zero()) b = (b + star_mul(b, err, spec)).truncated(next);
    correct = next;
  }
  return b;
}

inline Jet star_inv(const Jet& a, const StarSpec& spec) {
  MatrixJet m(a.ring(), 1, 1);
  m.at(0, 0) = a;
  return star_inv(m, spec).at(0, 0);
}

}  // namespace wnaforge
