#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "wnaforge/derive.hpp"
#include "wnaforge/flow_system.hpp"
#include "wnaforge/h_table.hpp"
#include "wnaforge/parser.hpp"
#include "wnaforge/schur.hpp"
#include "wnaforge/verify.hpp"
#include "wnaforge/wna_expr.hpp"

using namespace wnaforge;

namespace {

// All partitions of n as multiplicity vectors a[k] (index k = part size).
void partitions_rec(int n, int max_part, std::vector<int>& mult,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(mult);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    ++mult[static_cast<size_t>(k)];
    partitions_rec(n - k, k, mult, out);
    --mult[static_cast<size_t>(k)];
  }
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> mult(static_cast<size_t>(n) + 1, 0);
  partitions_rec(n, n, mult, out);
  return out;
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

Rational pow_rational(int base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= Rational(base);
  return r;
}

NcExpr f_expr() { return NcExpr::atom(Atom{Symbol{"f", {}, false}, {}}); }

}  // namespace

TEST_CASE("schur operators match the exponential expansion") {
  // Coefficient of lambda^n in exp(sum_k lambda^k d_k / k): the partition
  // (1^a1 2^a2 ...) contributes prod_k 1 / (k^ak ak!).
  for (int n = 0; n <= 5; ++n) {
    SchurOp expected;
    for (const auto& mult : partitions(n)) {
      Rational coeff(1);
      SchurOp::Key key;
      for (int k = 1; k <= n; ++k) {
        int a = mult[static_cast<size_t>(k)];
        if (a == 0) continue;
        coeff *= Rational(1) / (pow_rational(k, a) * factorial(a));
        for (int i = 0; i < a; ++i) key.push_back(VarIndex::time(k));
      }
      std::sort(key.begin(), key.end());
      expected.add_term(std::move(key), coeff);
    }
    INFO("order " << n);
    CHECK(schur_operator(n) == expected);
  }
}

TEST_CASE("signed schur operators flip with the number of parts") {
  for (int n = 1; n <= 4; ++n) {
    SchurOp plus = schur_operator(n, 1);
    SchurOp expected;
    for (const auto& [key, c] : plus.terms()) {
      Rational sign(key.size() % 2 == 0 ? 1 : -1);
      expected.add_term(key, sign * c);
    }
    CHECK(schur_operator(n, -1) == expected);
  }
}

TEST_CASE("the first schur operators take their closed forms") {
  CHECK(schur_operator(0) == SchurOp::identity());
  CHECK(schur_operator(1) == SchurOp::derivative(VarIndex::time(1)));

  SchurOp p2;
  p2.add_term({VarIndex::time(2)}, Rational(1, 2));
  p2.add_term({VarIndex::time(1), VarIndex::time(1)}, Rational(1, 2));
  CHECK(schur_operator(2) == p2);

  SchurOp p3;
  p3.add_term({VarIndex::time(3)}, Rational(1, 3));
  p3.add_term({VarIndex::time(1), VarIndex::time(2)}, Rational(1, 2));
  p3.add_term({VarIndex::time(1), VarIndex::time(1), VarIndex::time(1)}, Rational(1, 6));
  CHECK(schur_operator(3) == p3);
}

TEST_CASE("inverted derivations recover the repeated-index directions") {
  // d_{t_{1^k}} = (-1)^k p_k(-eth~), with eth~ = (eth_1, eth_2/2, ...).
  for (int k = 1; k <= 4; ++k) {
    std::vector<SchurOp> weighted;
    for (int j = 1; j <= k; ++j) weighted.push_back(Rational(-1) * eth_operator(j));
    SchurOp recovered = Rational(k % 2 == 0 ? 1 : -1) * schur_from_weighted(k, weighted);
    INFO("order " << k);
    CHECK(recovered == SchurOp::derivative(ones_word(k)));
  }
}

TEST_CASE("the second inverted derivation takes its closed form") {
  CHECK(eth_operator(1) == SchurOp::derivative(VarIndex::time(1)));
  SchurOp e2;
  e2.add_term({VarIndex::time(1), VarIndex::time(1)}, Rational(1));
  e2.add_term({VarIndex::time({1, 1})}, Rational(-2));
  CHECK(eth_operator(2) == e2);
}

TEST_CASE("the h table reproduces the hand expansions") {
  HTable table;
  NcExpr h1 = h_symbol(1), h2 = h_symbol(2), h3 = h_symbol(3);
  CHECK(table.expand(2, 0) ==
        Rational(2) * h2 - apply_derivative(VarIndex::time(1), h1));
  CHECK(table.expand(2, 1) ==
        Rational(2) * h3 - apply_derivative(VarIndex::time(1), h2) + h1 * h1);
}

TEST_CASE("single-index symbols reduce to frozen derivative lists") {
  HTable table;
  CHECK(table.table(1, 1) == parse_expr("1/2*D[t{2}](f) + 1/2*D[t{1},t{1}](f)"));
  CHECK(table.table(1, 2) ==
        parse_expr("1/3*D[t{3}](f) + 1/2*D[t{1},t{2}](f) + 1/6*D[t{1},t{1},t{1}](f)"));
  CHECK(table.table(2, 1) ==
        parse_expr("2/3*D[t{3}](f) + 1/2*D[t{1},t{2}](f) - 1/6*D[t{1},t{1},t{1}](f)"
                   " + D[t{1}](f)*D[t{1}](f)"));
}

TEST_CASE("the table depth limit reports the blocked monomial") {
  HTable small(3);
  CHECK_THROWS_AS(small.expand(2, 2), IrreducibleError);
  CHECK_THROWS_AS(derive_theta_equation(2, 3, small), IrreducibleError);
  CHECK_THROWS_AS(derive_theta_equation(2, 2), ConfigError);
}

TEST_CASE("matrix realization takes the expected values") {
  WnaExpr F = WnaExpr::f();
  WnaExpr phi_leaf = WnaExpr::atom(Atom{Symbol{"phi", {}, false}, {}});

  CHECK(map_to_matrix_realization(circ(1, F, F)) == Rational(-1) * riccati_rhs(1));
  CHECK(map_to_matrix_realization(circ(1, phi_leaf, phi_leaf)) ==
        parse_expr("phi*Q*phi"));

  LqrsTable lqrs;
  for (int n = 2; n <= 4; ++n) {
    WnaExpr nn = circ(n, WnaExpr::nu(), WnaExpr::nu());
    INFO("grade " << n);
    CHECK(map_to_matrix_realization(nn) == Rational(-1) * lqrs.expand("S", n));
    WnaExpr na = circ(n, WnaExpr::nu(), phi_leaf);
    CHECK(map_to_matrix_realization(na) == lqrs.expand("L", n) * phi());
    WnaExpr an = circ(n, phi_leaf, WnaExpr::nu());
    CHECK(map_to_matrix_realization(an) == Rational(-1) * phi() * lqrs.expand("R", n));
  }
}

TEST_CASE("the tree product obeys grade additivity") {
  WnaExpr F = WnaExpr::f();
  WnaExpr phi_leaf = WnaExpr::atom(Atom{Symbol{"phi", {}, false}, {}});
  std::vector<WnaExpr> pool = {F, phi_leaf, circ(1, F, F)};
  for (const WnaExpr& a : pool)
    for (const WnaExpr& b : pool)
      for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        WnaExpr lhs = circ(m + n, a, b);
        WnaExpr rhs = circ(m, a, circ(n, F, b)) - circ(n, circ(m, a, F), b);
        CHECK(map_to_matrix_realization(lhs) == map_to_matrix_realization(rhs));
      }
}

TEST_CASE("the nucleus lemma agrees with direct products") {
  WnaExpr F = WnaExpr::f();
  WnaExpr phi_leaf = WnaExpr::atom(Atom{Symbol{"phi", {}, false}, {}});
  for (const WnaExpr& a : {phi_leaf, circ(1, F, F)})
    for (int n = 1; n <= 3; ++n) {
      INFO("grade " << n);
      CHECK(map_to_matrix_realization(lemma_expand(LemmaSide::left, n, a)) ==
            map_to_matrix_realization(circ(n, F, a)));
      CHECK(map_to_matrix_realization(lemma_expand(LemmaSide::right, n, a)) ==
            map_to_matrix_realization(circ(n, a, F)));
    }
}

TEST_CASE("iterated left multiplication matches the schur substitution") {
  // h_n = L_f^n f in the tree algebra against p_n(d~) f through the flows.
  LqrsTable lqrs;
  for (int n = 1; n <= 5; ++n) {
    WnaTreePtr t = WnaTree::f();
    for (int i = 0; i < n; ++i) t = WnaTree::node(1, WnaTree::f(), t);
    NcExpr realized = map_to_matrix_realization(WnaExpr::tree(t));

    HTable table;
    CheckConfig cfg;
    cfg.candidate = Rational(-1) * phi_form(table.table(1, n - 1));
    cfg.target = realized;
    cfg.system = make_riccati_system({.max_time = n});
    CheckReport rep = verify_identity(cfg, lqrs);
    INFO("h_" << n);
    CHECK(rep.verified);
    CHECK_FALSE(rep.used_constraints);
  }
}

TEST_CASE("the deformation flow derivation reproduces the closed equation") {
  HTable table;
  DerivedEquation eq = derive_theta_equation(1, 2, table);
  CHECK(eq.var == VarIndex::theta(1, 2));
  CHECK(eq.f_rhs == parse_expr("1/6*D[t{3}](f) - 1/6*D[t{1},t{1},t{1}](f)"
                               " + D[t{1}](f)*D[t{1}](f)"));
  CHECK(eq.phi_rhs == parse_expr("1/6*D[t{3}](phi) - 1/6*D[t{1},t{1},t{1}](phi)"
                                 " - D[t{1}](phi)*Q*D[t{1}](phi)"));
}

TEST_CASE("derived deformation flows agree with the matrix family") {
  LqrsTable lqrs;
  WnaExpr F = WnaExpr::f();
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 4}}) {
    HTable table;
    DerivedEquation eq = derive_theta_equation(m, n, table);
    WnaExpr tree = Rational(1, 2) * (circ(m, F, circ(n, F, F)) -
                                     circ(n, F, circ(m, F, F)));
    // The tree is the f-flow value; with f = nu - phi the phi-flow negates it.
    NcExpr realized = Rational(-1) * map_to_matrix_realization(tree);
    FlowSystem sys = make_riccati_system({.max_time = m + n});

    INFO("theta " << m << "," << n);
    CheckConfig c1;
    c1.candidate = eq.phi_rhs;
    c1.target = realized;
    c1.system = sys;
    CheckReport r1 = verify_identity(c1, lqrs);
    CHECK(r1.verified);
    CHECK_FALSE(r1.used_constraints);

    CheckConfig c2;
    c2.candidate = theta_derivative_form(m, n);
    c2.target = realized;
    c2.system = sys;
    CheckReport r2 = verify_identity(c2, lqrs);
    CHECK(r2.verified);
    CHECK_FALSE(r2.used_constraints);
  }
}

TEST_CASE("composition flows antisymmetrize to the deformation flow") {
  HTable table;
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    DerivedEquation fw = derive_composition_equation({m, n}, table);
    DerivedEquation bw = derive_composition_equation({n, m}, table);
    DerivedEquation th = derive_theta_equation(m, n, table);
    INFO("theta " << m << "," << n);
    CHECK(Rational(1, 2) * (fw.f_rhs - bw.f_rhs) == th.f_rhs);
  }
}

TEST_CASE("derived composition flows agree with the matrix family") {
  LqrsTable lqrs;
  const std::vector<std::vector<int>> words = {{1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {1, 1, 2}};
  for (const auto& w : words) {
    HTable table;
    DerivedEquation eq = derive_composition_equation(w, table);
    CHECK(eq.var == VarIndex::time(w));
    int total = 0;
    for (int m : w) total += m;

    CheckConfig cfg;
    cfg.candidate = eq.phi_rhs;
    cfg.target = composition_flow_rhs(w);
    cfg.system = make_riccati_system({.max_time = total});
    CheckReport rep = verify_identity(cfg, lqrs);
    INFO("word " << VarIndex::time(w).str());
    CHECK(rep.verified);
    CHECK_FALSE(rep.used_constraints);
  }
}

TEST_CASE("single time flows fall out of the first composition chain") {
  // The repeated-index direction in plain derivatives: the same combination
  // the inverted-derivation table assigns to t_{1,1}.
  HTable table;
  DerivedEquation eq = derive_composition_equation({1, 1}, table);
  CHECK(eq.f_rhs == parse_expr("1/2*D[t{1},t{1}](f) - 1/2*D[t{2}](f)"));
  CHECK(eq.phi_rhs == parse_expr("1/2*D[t{1},t{1}](phi) - 1/2*D[t{2}](phi)"));
}
