#pragma once

#include "wnaforge/residuals.hpp"

namespace wnaforge {

// Determinant route to a scalar potential: tau = det X with
//   X = e^{xi(R)} (I + K phi0) - K e^{xi(L)} phi0,
// whose constant part is the identity, and
//   phihat = (d_1 tau) / tau - tr R.
// The same scalar arises as tr(Q phi) from the closed solution, so the two
// routes cross-check each other.
struct TauReduction {
  Jet tau;
  Jet phihat;
};

inline TauReduction tau_reduction(const SolutionSpec& spec, const JetRing& ring) {
  spec.validate();
  MatrixJet y = jet_exp(xi_jet(ring, spec.L)) * MatrixJet::constant(ring, spec.phi0);
  RationalMatrix ikp = mat_add(mat_identity(spec.n()), mat_mul(spec.K, spec.phi0));
  MatrixJet x = jet_exp(xi_jet(ring, spec.R)) * MatrixJet::constant(ring, ikp) -
                MatrixJet::constant(ring, spec.K) * y;
  Jet tau = x.det();
  Rational tr(0);
  for (size_t i = 0; i < spec.n(); ++i) tr += spec.R[i][i];
  Jet phihat = tau.partial(VarIndex::time(1)) * tau.inverse() - Jet::scalar(ring, tr);
  return {std::move(tau), std::move(phihat)};
}

// tr(Q phi), the matrix-side version of phihat.
inline Jet coupled_trace(const SolutionSpec& spec, const MatrixJet& phi) {
  MatrixJet qc = MatrixJet::constant(phi.ring(), spec.coupling(1));
  return (qc * phi).trace();
}

}  // namespace wnaforge
