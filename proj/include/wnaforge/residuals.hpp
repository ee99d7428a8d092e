#pragma once

#include "wnaforge/schur.hpp"
#include "wnaforge/solution.hpp"

namespace wnaforge {

// Apply a polynomial in commuting partial derivatives to a jet.
inline Jet apply_op(const SchurOp& op, const Jet& j) {
  Jet out(j.ring());
  for (const auto& [dirs, c] : op.terms()) {
    Jet d = j;
    for (const VarIndex& v : dirs) d = d.partial(v);
    out += c * d;
  }
  return out;
}

inline MatrixJet apply_op(const SchurOp& op, const MatrixJet& m) {
  MatrixJet out = m;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = apply_op(op, m.at(i, j));
  return out;
}

inline JetRing single_time_ring(int max_time, int order) {
  std::vector<VarIndex> vars;
  for (int m = 1; m <= max_time; ++m) vars.push_back(VarIndex::time(m));
  return JetRing(std::move(vars), order);
}

inline JetRing ones_word_ring(int max_len, int order) {
  std::vector<VarIndex> vars;
  for (int k = 1; k <= max_len; ++k) vars.push_back(ones_word(k));
  return JetRing(std::move(vars), order);
}

// Every residual below computes the solution with enough extra weighted
// order to cover the derivatives its identity applies, then truncates back
// to `depth`: the returned jet is exact through that weight, so a passing
// check is an identity of every reported coefficient, not an approximation.

// d_{t_n} phi - (L^n phi - phi R^n - phi (Q_n phi)).
inline MatrixJet residual_single_flow(const SolutionSpec& spec, int n, int depth) {
  if (n < 1) throw ConfigError("flow grade must be positive");
  JetRing ring = single_time_ring(n, depth + n);
  StarSpec star = StarSpec::ordinary();
  MatrixJet phi = phi_solution(spec, ring, star);
  MatrixJet res = phi.partial(VarIndex::time(n)) - flow_rhs_jet(spec, phi, VarIndex::time(n), star);
  return res.truncated(depth);
}

// Flow of the dressed frame: d_{t_n} (L^i phi R^j) against its telescoped
// expansion through the coupling.
inline MatrixJet residual_frame_flow(const SolutionSpec& spec, int i, int j, int n,
                                     int depth) {
  if (i < 0 || j < 0 || n < 1) throw ConfigError("frame indices out of range");
  JetRing ring = single_time_ring(n, depth + n);
  StarSpec star = StarSpec::ordinary();
  MatrixJet phi = phi_solution(spec, ring, star);
  MatrixJet qc = MatrixJet::constant(ring, spec.coupling(1));
  MatrixJet rhs = sato_frame(spec, phi, i + n, j) - sato_frame(spec, phi, i, j + n);
  for (int k = 0; k < n; ++k)
    rhs = rhs - star_mul(sato_frame(spec, phi, i, k), qc * sato_frame(spec, phi, n - 1 - k, j),
                         star);
  MatrixJet res = sato_frame(spec, phi, i, j).partial(VarIndex::time(n)) - rhs;
  return res.truncated(depth);
}

// p_k with the substitution t_j -> -d_{t_j} / j.
inline SchurOp schur_derivative_op(int k) { return schur_operator(k, -1); }

// The hierarchy in Schur form, for a given phi and coupling:
//   p_{n+1}(-d) p_m(-d) phi - p_{m+1}(-d) p_n(-d) phi
//     = sum_{k<m} p_k(-d) p_n(-d) phi Q p_{m-k}(-d) phi
//     - sum_{k<n} p_k(-d) p_m(-d) phi Q p_{n-k}(-d) phi.
inline MatrixJet residual_hierarchy_core(const MatrixJet& phi, const RationalMatrix& q,
                                         int m, int n) {
  const JetRing& ring = phi.ring();
  MatrixJet qc = MatrixJet::constant(ring, q);
  auto p = [&](int k, const MatrixJet& x) { return apply_op(schur_derivative_op(k), x); };
  MatrixJet pm = p(m, phi), pn = p(n, phi);
  MatrixJet lhs = p(n + 1, pm) - p(m + 1, pn);
  MatrixJet rhs(ring, phi.rows(), phi.cols());
  for (int k = 0; k < m; ++k) rhs += p(k, pn) * (qc * p(m - k, phi));
  for (int k = 0; k < n; ++k) rhs = rhs - p(k, pm) * (qc * p(n - k, phi));
  return lhs - rhs;
}

inline MatrixJet residual_hierarchy(const SolutionSpec& spec, int m, int n, int depth) {
  if (m < 1 || n < 1) throw ConfigError("hierarchy indices must be positive");
  JetRing ring = single_time_ring(std::max(m, n) + 1, depth + m + n + 1);
  MatrixJet phi = phi_solution(spec, ring, StarSpec::ordinary());
  return residual_hierarchy_core(phi, spec.coupling(1), m, n).truncated(depth);
}

// Deformation flow residual d_v phi - rhs(v) under the star the direction v
// belongs to: a theta parameter pairs with the two-time deformation, a
// two-index word with the composed product.
inline MatrixJet residual_deformation(const SolutionSpec& spec, const VarIndex& v,
                                      int depth) {
  if (v.idx.size() != 2) throw ConfigError("deformation residual needs a two-index direction");
  int m = v.idx[0], n = v.idx[1];
  std::vector<VarIndex> vars = {VarIndex::time(m), VarIndex::time(n), v};
  if (m == n) vars.erase(vars.begin() + 1);
  JetRing ring(vars, depth + 2);
  StarSpec star = v.kind == VarIndex::Kind::Theta
                      ? StarSpec::moyal(m, n, v)
                      : StarSpec::composed(ring, 2);
  MatrixJet phi = phi_solution(spec, ring, star);
  MatrixJet res = phi.partial(v) - flow_rhs_jet(spec, phi, v, star);
  return res.truncated(depth);
}

// The hierarchy written on the repeated-index tower, with the composed star:
//   phi_{t_{1^{n+1}} t_{1^m}} - phi_{t_{1^{m+1}} t_{1^n}}
//     = sum_{k<n} phi_{t_{1^m} t_{1^k}} * Q phi_{t_{1^{n-k}}}
//     - sum_{k<m} phi_{t_{1^n} t_{1^k}} * Q phi_{t_{1^{m-k}}}.
inline MatrixJet residual_tower_hierarchy(const SolutionSpec& spec, int m, int n,
                                          int depth) {
  if (m < 1 || n < 1) throw ConfigError("hierarchy indices must be positive");
  int top = std::max(m, n) + 1;
  JetRing ring = ones_word_ring(top, depth + m + n + 1);
  StarSpec star = StarSpec::composed(ring, top);
  MatrixJet phi = phi_solution(spec, ring, star);
  MatrixJet qc = MatrixJet::constant(ring, spec.coupling(1));
  auto pd = [&](const MatrixJet& x, int k) { return k == 0 ? x : x.partial(ones_word(k)); };
  MatrixJet lhs = pd(pd(phi, n + 1), m) - pd(pd(phi, m + 1), n);
  MatrixJet rhs(ring, phi.rows(), phi.cols());
  for (int k = 0; k < n; ++k)
    rhs += star_mul(pd(pd(phi, m), k), qc * pd(phi, n - k), star);
  for (int k = 0; k < m; ++k)
    rhs = rhs - star_mul(pd(pd(phi, n), k), qc * pd(phi, m - k), star);
  return (lhs - rhs).truncated(depth);
}

}  // namespace wnaforge
