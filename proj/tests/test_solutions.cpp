#include <catch2/catch_amalgamated.hpp>

#include "wnaforge/hat.hpp"
#include "wnaforge/residuals.hpp"
#include "wnaforge/tau.hpp"
#include "wnaforge/xi.hpp"

using namespace wnaforge;

namespace {

Rational q(long long v) { return Rational(v); }

SolutionSpec spec_wide() {
  // M = 1, N = 2.
  return {{{q(2)}},
          {{q(3), q(1)}, {q(0), q(5)}},
          {{q(1)}, {q(1)}},
          {{q(1), q(2)}}};
}

SolutionSpec spec_square() {
  // M = N = 2.
  return {{{q(1), q(1)}, {q(0), q(2)}},
          {{q(3), q(0)}, {q(1), q(4)}},
          {{q(1), q(0)}, {q(0), q(1)}},
          {{q(1), q(2)}, {q(3), q(4)}}};
}

SolutionSpec spec_scalar() { return {{{q(1)}}, {{q(2)}}, {{q(1)}}, {{q(1)}}}; }

}  // namespace

TEST_CASE("solution specs validate their shapes") {
  SolutionSpec bad = spec_wide();
  bad.K = {{q(1)}};
  REQUIRE_THROWS_AS(bad.validate(), ConfigError);
  bad = spec_wide();
  bad.phi0 = {{q(1)}, {q(2)}};
  REQUIRE_THROWS_AS(bad.validate(), ConfigError);
  REQUIRE_NOTHROW(spec_wide().validate());
}

TEST_CASE("the closed solution matches flow integration") {
  auto check = [](const SolutionSpec& spec, const JetRing& ring, const StarSpec& star) {
    REQUIRE(phi_solution(spec, ring, star) == solve_flow_series(spec, ring, star));
  };

  SECTION("single times, ordinary product") {
    JetRing ring = single_time_ring(3, 5);
    check(spec_wide(), ring, StarSpec::ordinary());
    check(spec_square(), ring, StarSpec::ordinary());
    check(spec_scalar(), ring, StarSpec::ordinary());
  }

  SECTION("deformation parameter ring") {
    JetRing ring({VarIndex::time(1), VarIndex::time(2), VarIndex::theta(1, 2)}, 5);
    StarSpec star = StarSpec::moyal(1, 2, VarIndex::theta(1, 2));
    check(spec_wide(), ring, star);
    check(spec_square(), ring, star);
  }

  SECTION("composed-word ring") {
    JetRing ring({VarIndex::time(1), VarIndex::time(2), VarIndex::time({1, 2})}, 5);
    StarSpec star = StarSpec::composed(ring, 2);
    check(spec_wide(), ring, star);
    check(spec_square(), ring, star);
  }

  SECTION("repeated-index tower") {
    JetRing ring = ones_word_ring(3, 6);
    StarSpec star = StarSpec::composed(ring, 3);
    check(spec_wide(), ring, star);
    check(spec_scalar(), ring, star);
  }
}

TEST_CASE("flow residuals vanish on closed solutions") {
  SolutionSpec specs[] = {spec_wide(), spec_square()};
  for (const SolutionSpec& spec : specs) {
    for (int n = 1; n <= 3; ++n) REQUIRE(residual_single_flow(spec, n, 3).is_zero());
    REQUIRE(residual_frame_flow(spec, 0, 0, 1, 3).is_zero());
    REQUIRE(residual_frame_flow(spec, 1, 1, 2, 3).is_zero());
    REQUIRE(residual_frame_flow(spec, 2, 1, 2, 3).is_zero());
    REQUIRE(residual_hierarchy(spec, 1, 2, 3).is_zero());
    REQUIRE(residual_hierarchy(spec, 1, 3, 3).is_zero());
    REQUIRE(residual_deformation(spec, VarIndex::theta(1, 2), 3).is_zero());
    REQUIRE(residual_deformation(spec, VarIndex::time({1, 2}), 3).is_zero());
    REQUIRE(residual_tower_hierarchy(spec, 1, 2, 3).is_zero());
  }
}

TEST_CASE("perturbed data leaves a nonzero residual") {
  SolutionSpec spec = spec_wide();
  JetRing ring = single_time_ring(3, 7);
  MatrixJet phi = phi_solution(spec, ring, StarSpec::ordinary());

  SECTION("perturbing the solution") {
    MatrixJet bent = phi;
    Jet t1 = Jet::variable(ring, VarIndex::time(1));
    bent.at(0, 0) += t1 * t1;
    MatrixJet res = residual_hierarchy_core(bent, spec.coupling(1), 1, 2).truncated(3);
    REQUIRE_FALSE(res.is_zero());
  }

  SECTION("wrong coupling grade") {
    MatrixJet res = residual_hierarchy_core(phi, spec.coupling(2), 1, 2).truncated(3);
    REQUIRE_FALSE(res.is_zero());
  }
}

TEST_CASE("the dressed frame starts at the solution") {
  SolutionSpec spec = spec_scalar();
  JetRing ring = single_time_ring(2, 4);
  MatrixJet phi = phi_solution(spec, ring, StarSpec::ordinary());
  REQUIRE(sato_frame(spec, phi, 0, 0) == phi);
}

TEST_CASE("the determinant route reproduces the coupled trace") {
  SolutionSpec spec = spec_wide();
  JetRing ring = single_time_ring(3, 8);
  TauReduction red = tau_reduction(spec, ring);
  REQUIRE(red.tau.constant_term() == Rational(1));
  // phihat spends one derivative on tau, so it is exact through weight 7.
  MatrixJet phi = phi_solution(spec, ring, StarSpec::ordinary());
  REQUIRE(red.phihat.truncated(7) == coupled_trace(spec, phi).truncated(7));

  // The scalar obeys the hierarchy with unit coupling; the (1, 2) identity
  // spends four more derivatives.
  MatrixJet hat(ring, 1, 1);
  hat.at(0, 0) = red.phihat;
  REQUIRE(residual_hierarchy_core(hat, {{Rational(1)}}, 1, 2).truncated(3).is_zero());
}

TEST_CASE("the multi-time rebuild matches the plain solution") {
  SolutionSpec spec = spec_scalar();
  JetRing tower = ones_word_ring(3, 9);
  StarSpec star = StarSpec::composed(tower, 3);
  MatrixJet g = phi_solution(spec, tower, star);
  JetRing out = single_time_ring(3, 3);
  MatrixJet rebuilt = hat_transform(g, out);
  REQUIRE(rebuilt == phi_solution(spec, out, StarSpec::ordinary()));
}

TEST_CASE("products of plain exponentials stay exponential") {
  std::vector<Rational> two = {Rational(1), Rational(2)};
  std::vector<Rational> three = {Rational(1), Rational(2), Rational(3)};
  REQUIRE(xi_product_residual(two, 3, 2, 4).is_zero());
  REQUIRE(xi_product_residual(three, 3, 2, 4).is_zero());

  for (int n = 1; n <= 3; ++n) {
    REQUIRE(newton_minor_check(two, n));
    REQUIRE(newton_minor_check(three, n));
  }
  REQUIRE(minor_sum(two, {1, 1, 1}) == Rational(0));
  REQUIRE(minor_sum(three, {1, 1}) == Rational(1 * 2 + 1 * 3 + 2 * 3));
}
