#pragma once

#include "wnaforge/star.hpp"

namespace wnaforge {

// Matrix data (L, R, K, phi0) generating an exact solution of the flow
// hierarchy. Shapes: L is MxM, R is NxN, K is NxM, phi0 is MxN, and the
// telescoped coupling R^j K - K L^j plays the role of the grade-j seam.
struct SolutionSpec {
  RationalMatrix L, R, K, phi0;

  size_t m() const { return mat_rows(L); }
  size_t n() const { return mat_rows(R); }

  void validate() const {
    if (mat_rows(L) == 0 || mat_cols(L) != mat_rows(L))
      throw ConfigError("solution spec: L must be square and nonempty");
    if (mat_rows(R) == 0 || mat_cols(R) != mat_rows(R))
      throw ConfigError("solution spec: R must be square and nonempty");
    if (mat_rows(K) != n() || mat_cols(K) != m())
      throw ConfigError("solution spec: K must be N x M");
    if (mat_rows(phi0) != m() || mat_cols(phi0) != n())
      throw ConfigError("solution spec: phi0 must be M x N");
  }

  RationalMatrix coupling(int j) const {
    return mat_sub(mat_mul(mat_pow(R, j), K), mat_mul(K, mat_pow(L, j)));
  }
};

// xi(A) = sum over single-index ring times t_m of t_m A^m. Composite words
// and deformation parameters never enter: their dependence is generated by
// the star structure alone.
inline MatrixJet xi_jet(const JetRing& ring, const RationalMatrix& a) {
  MatrixJet out(ring, mat_rows(a), mat_rows(a));
  for (size_t s = 0; s < ring.size(); ++s) {
    const VarIndex& v = ring.var(s);
    if (v.kind != VarIndex::Kind::Time || v.idx.size() != 1) continue;
    out += Jet::variable(ring, v) * MatrixJet::constant(ring, mat_pow(a, v.idx[0]));
  }
  return out;
}

// Exponential of a square matrix jet with zero constant part.
inline MatrixJet jet_exp(const MatrixJet& x) {
  if (x.rows() != x.cols()) throw ConfigError("matrix exponential needs a square input");
  for (const auto& row : x.constant_part())
    for (const Rational& c : row)
      if (!c.is_zero()) throw ConfigError("matrix exponential needs a zero constant part");
  const JetRing& ring = x.ring();
  MatrixJet result = MatrixJet::identity(ring, x.rows());
  MatrixJet term = result;
  for (int k = 1; k <= ring.order(); ++k) {
    term = Rational(1, k) * (term * x);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

// phi = e^{xi(L)} phi0 * (e^{xi(R)} (I + K phi0) - K e^{xi(L)} phi0)^{*-1}.
// The bracket has constant part I, so the star inverse always exists.
inline MatrixJet phi_solution(const SolutionSpec& spec, const JetRing& ring,
                              const StarSpec& star) {
  spec.validate();
  MatrixJet y = jet_exp(xi_jet(ring, spec.L)) * MatrixJet::constant(ring, spec.phi0);
  MatrixJet kc = MatrixJet::constant(ring, spec.K);
  RationalMatrix ikp = mat_add(mat_identity(spec.n()), mat_mul(spec.K, spec.phi0));
  MatrixJet theta = jet_exp(xi_jet(ring, spec.R)) * MatrixJet::constant(ring, ikp) - kc * y;
  return star_mul(y, star_inv(theta, star), star);
}

// Right-hand side of the flow in direction v, as a function of phi alone:
//   single time t_m:  L^m phi - phi R^m - phi * (Q_m phi)
//   theta(m, n):      1/2 (F_n * (R^m + Q_m phi) - F_m * (R^n + Q_n phi))
//   word t_{m1..mr}:  F_{m1} chained through -(...) * (R^{mj} + Q_mj phi)
inline MatrixJet flow_rhs_jet(const SolutionSpec& spec, const MatrixJet& phi,
                              const VarIndex& v, const StarSpec& star) {
  const JetRing& ring = phi.ring();
  auto rn = [&](int j) { return MatrixJet::constant(ring, mat_pow(spec.R, j)); };
  auto ln = [&](int j) { return MatrixJet::constant(ring, mat_pow(spec.L, j)); };
  auto qn = [&](int j) { return MatrixJet::constant(ring, spec.coupling(j)); };
  auto single = [&](int j) {
    return ln(j) * phi - phi * rn(j) - star_mul(phi, qn(j) * phi, star);
  };
  if (v.kind == VarIndex::Kind::Theta) {
    int lo = v.idx[0], hi = v.idx[1];
    return Rational(1, 2) *
           (star_mul(single(hi), rn(lo) + qn(lo) * phi, star) -
            star_mul(single(lo), rn(hi) + qn(hi) * phi, star));
  }
  MatrixJet e = single(v.idx[0]);
  for (size_t p = 1; p < v.idx.size(); ++p) {
    int j = v.idx[p];
    e = Rational(-1) * star_mul(e, rn(j) + qn(j) * phi, star);
  }
  return e;
}

namespace detail {

inline void keys_of_weight(const JetRing& ring, size_t slot, JetKey k, int w,
                           int target, std::vector<JetKey>& out) {
  if (slot == ring.size()) {
    if (w == target) out.push_back(k);
    return;
  }
  for (int e = 0; w + e * ring.weight(slot) <= target; ++e)
    keys_of_weight(ring, slot + 1, k + (JetKey(e) << (8 * slot)), w + e * ring.weight(slot),
                   target, out);
}

}  // namespace detail

// Independent route to the solution: integrate the flow equations degree by
// degree from phi(0) = phi0. Every flow is algebraic in phi, so weight-d
// coefficients only need weight < d data.
inline MatrixJet solve_flow_series(const SolutionSpec& spec, const JetRing& ring,
                                   const StarSpec& star) {
  spec.validate();
  MatrixJet phi = MatrixJet::constant(ring, spec.phi0);
  for (int d = 1; d <= ring.order(); ++d) {
    std::vector<MatrixJet> rhs;
    rhs.reserve(ring.size());
    for (size_t s = 0; s < ring.size(); ++s)
      rhs.push_back(flow_rhs_jet(spec, phi, ring.var(s), star));
    std::vector<JetKey> keys;
    detail::keys_of_weight(ring, 0, 0, 0, d, keys);
    for (JetKey k : keys) {
      size_t s = 0;
      while (JetRing::exponent(k, s) == 0) ++s;
      Rational inv_e(1, JetRing::exponent(k, s));
      JetKey down = k - JetRing::unit(s);
      for (size_t i = 0; i < phi.rows(); ++i)
        for (size_t j = 0; j < phi.cols(); ++j) {
          Rational c = rhs[s].at(i, j).coefficient(down);
          if (!c.is_zero()) phi.at(i, j).add_term(k, inv_e * c);
        }
    }
  }
  return phi;
}

// Dressed frame entries L^i phi R^j.
inline MatrixJet sato_frame(const SolutionSpec& spec, const MatrixJet& phi, int i, int j) {
  const JetRing& ring = phi.ring();
  return MatrixJet::constant(ring, mat_pow(spec.L, i)) * phi *
         MatrixJet::constant(ring, mat_pow(spec.R, j));
}

}  // namespace wnaforge
