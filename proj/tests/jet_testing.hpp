#pragma once

#include <random>

#include "wnaforge/star.hpp"

namespace wnaforge::testing {

// Deterministic small jet: a handful of terms with coefficients in [-3, 3]
// and weighted degree at most max_weight.
inline Jet random_jet(std::mt19937& rng, const JetRing& ring, int max_weight,
                      int terms = 6) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> expo(0, 2);
  Jet out(ring);
  for (int t = 0; t < terms; ++t) {
    JetKey k = 0;
    int w = 0;
    for (size_t i = 0; i < ring.size(); ++i) {
      int e = expo(rng);
      k += JetKey(e) << (8 * i);
      w += e * ring.weight(i);
    }
    if (w > max_weight) continue;
    int c = coeff(rng);
    if (c == 0) c = 1;
    out.add_term(k, Rational(c));
  }
  return out;
}

}  // namespace wnaforge::testing
