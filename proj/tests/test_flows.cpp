#include <catch2/catch_amalgamated.hpp>

#include <array>

#include "wnaforge/commute.hpp"
#include "wnaforge/parser.hpp"
#include "wnaforge/render.hpp"
#include "wnaforge/verify.hpp"

using namespace wnaforge;

namespace {

using Mat2 = std::array<std::array<NcExpr, 2>, 2>;

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Block layout: powers of [[R, Q], [S, L]] carry the grade-n letters.
Mat2 block_matrix() {
  return Mat2{{{grade_atom("R", 1), grade_atom("Q", 1)},
               {grade_atom("S", 1), grade_atom("L", 1)}}};
}

NcExpr power(const NcExpr& e, int n) {
  NcExpr out = NcExpr::one();
  for (int i = 0; i < n; ++i) out = out * e;
  return out;
}

std::set<VarIndex> aux_set(const CommuteReport& r) {
  return std::set<VarIndex>(r.aux.begin(), r.aux.end());
}

}  // namespace

TEST_CASE("graded letters follow the block matrix powers") {
  LqrsTable table;
  Mat2 h = block_matrix();
  Mat2 hn = h;
  for (int n = 2; n <= 5; ++n) {
    hn = mat_mul(hn, h);
    CHECK(table.expand("R", n) == hn[0][0]);
    CHECK(table.expand("Q", n) == hn[0][1]);
    CHECK(table.expand("S", n) == hn[1][0]);
    CHECK(table.expand("L", n) == hn[1][1]);
  }
}

TEST_CASE("grade recursion holds for every split point") {
  LqrsTable table;
  for (int a = 1; a <= 3; ++a) {
    int b = 5 - a;
    CHECK(table.expand("L", 5) ==
          table.expand("L", a) * table.expand("L", b) + table.expand("S", a) * table.expand("Q", b));
    CHECK(table.expand("Q", 5) ==
          table.expand("R", a) * table.expand("Q", b) + table.expand("Q", a) * table.expand("L", b));
    CHECK(table.expand("R", 5) ==
          table.expand("R", a) * table.expand("R", b) + table.expand("Q", a) * table.expand("S", b));
    CHECK(table.expand("S", 5) ==
          table.expand("L", a) * table.expand("S", b) + table.expand("S", a) * table.expand("R", b));
  }
}

TEST_CASE("without the S letter the grades degenerate to powers") {
  LqrsTable table({.s_zero = true});
  NcExpr r = grade_atom("R", 1), l = grade_atom("L", 1), q = grade_atom("Q", 1);
  for (int n = 2; n <= 4; ++n) {
    CHECK(table.expand("R", n) == power(r, n));
    CHECK(table.expand("L", n) == power(l, n));
    CHECK(table.expand("S", n) == NcExpr::zero());
    NcExpr qn;
    for (int k = 0; k <= n - 1; ++k) qn += power(r, k) * q * power(l, n - 1 - k);
    CHECK(table.expand("Q", n) == qn);
  }
}

TEST_CASE("the telescoped coupling collapses the grade sum") {
  LqrsTable table({.s_zero = true, .q_telescoped = true});
  NcExpr r = grade_atom("R", 1), l = grade_atom("L", 1), k = grade_atom("K", 1);
  for (int n = 1; n <= 4; ++n)
    CHECK(table.expand("Q", n) == power(r, n) * k - k * power(l, n));
}

TEST_CASE("riccati flows commute without auxiliary directions") {
  LqrsTable table;
  FlowSystem sys = make_riccati_system({.max_time = 4});
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}}) {
    CommuteReport r = check_commute(sys, VarIndex::time(m), VarIndex::time(n), table);
    INFO("pair t" << m << ", t" << n);
    CHECK(r.status == CommuteStatus::commute);
    CHECK(r.aux.empty());
  }
}

TEST_CASE("deformation flow closed form matches its derivative form") {
  LqrsTable table;
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    CheckConfig cfg;
    cfg.candidate = theta_derivative_form(m, n);
    cfg.target = theta_flow_rhs(m, n);
    cfg.system = make_riccati_system({.max_time = std::max(m, n)});
    CheckReport rep = verify_identity(cfg, table);
    INFO("theta " << m << "," << n);
    CHECK(rep.verified);
    CHECK_FALSE(rep.used_constraints);
  }
}

TEST_CASE("deformation flow is antisymmetric in its indices") {
  CHECK(theta_flow_rhs(2, 1) == Rational(-1) * theta_flow_rhs(1, 2));
  CHECK(theta_derivative_form(3, 1) == Rational(-1) * theta_derivative_form(1, 3));
}

TEST_CASE("composition flow unfolds through appended indices") {
  NcExpr e12 = composition_flow_rhs({1, 2});
  NcExpr expected =
      Rational(-1) * riccati_rhs(1) * (grade_atom("R", 2) + grade_atom("Q", 2) * phi());
  CHECK(e12 == expected);
}

TEST_CASE("commutator pairs need exactly the expected auxiliary flows") {
  LqrsTable table;
  FlowSystem sys = make_riccati_system(
      {.max_time = 3, .thetas = {{1, 2}, {1, 3}, {2, 3}}, .words = {{1, 2}, {2, 1}}});
  auto t = [](int n) { return VarIndex::time(n); };
  auto tw = [](std::vector<int> w) { return VarIndex::time(std::move(w)); };
  auto th = [](int m, int n) { return VarIndex::theta(m, n); };

  struct Case {
    VarIndex v, w;
    std::set<VarIndex> aux;
  };
  const std::vector<Case> cases = {
      {t(1), t(2), {}},
      {th(1, 2), t(1), {t(2)}},
      {th(1, 2), t(3), {t(1), t(2)}},
      {th(1, 2), th(1, 3), {t(1), t(2), t(3)}},
      {tw({1, 2}), tw({2, 1}), {t(1), t(2)}},
      {tw({1, 2}), t(1), {t(2)}},
      {tw({1, 2}), t(2), {t(1)}},
      {tw({1, 2}), th(1, 3), {t(1), t(2), t(3)}},
  };
  for (const auto& c : cases) {
    CommuteReport r = check_commute(sys, c.v, c.w, table);
    INFO("pair " << c.v.str() << ", " << c.w.str());
    CHECK(r.status != CommuteStatus::fail);
    CHECK(aux_set(r) == c.aux);
  }
}

TEST_CASE("the deformed KdV pair commutes identically") {
  SymbolTable names = SymbolTable::standard();
  Symbol u{"u", {}, false};
  FlowSystem sys;
  sys.define(u, VarIndex::time(2),
             parse_expr("-D[t{1},t{1},t{1}](u) + 3*(D[t{1}](u)*u + u*D[t{1}](u))", names));
  sys.define(u, VarIndex::theta(1, 2),
             parse_expr("1/2*(D[t{1},t{1}](u)*u - u*D[t{1},t{1}](u))", names));
  LqrsTable table;
  CommuteReport r = check_commute(sys, VarIndex::time(2), VarIndex::theta(1, 2), table, u);
  CHECK(r.status == CommuteStatus::commute);
  CHECK(r.aux.empty());
  CHECK(r.residual.is_zero());
}

TEST_CASE("identity checking accepts a literal equality") {
  LqrsTable table;
  CheckConfig cfg;
  cfg.candidate = parse_expr("phi*Q*phi - L*phi");
  cfg.target = parse_expr("-L*phi + phi*Q*phi");
  CheckReport rep = verify_identity(cfg, table);
  CHECK(rep.verified);
  CHECK(rep.firings == 0);
}

TEST_CASE("flow substitution alone resolves the simplest deformation equation") {
  LqrsTable table;
  CheckConfig cfg;
  cfg.candidate =
      parse_expr("1/6*(D[t{3}](phi) - D[t{1},t{1},t{1}](phi)) - D[t{1}](phi)*Q*D[t{1}](phi)");
  cfg.target = theta_derivative_form(1, 2);
  cfg.system = make_riccati_system({.max_time = 3});
  CheckReport rep = verify_identity(cfg, table);
  CHECK(rep.verified);
  CHECK_FALSE(rep.used_constraints);
}

TEST_CASE("constraint closure resolves the reduced deformation equation") {
  LqrsTable table;
  CheckConfig cfg;
  cfg.candidate = parse_expr("-1/8*D[t{1},t{1},t{1}](phi) - 3/4*D[t{1}](phi)*Q*D[t{1}](phi)");
  cfg.target = parse_expr("-1/2*D[t{1}](phi)*(R{2} + Q{2}*phi)");
  cfg.system = make_riccati_system({.max_time = 1});
  cfg.constraints = {riccati_rhs(2)};
  CheckReport rep = verify_identity(cfg, table);
  CHECK(rep.verified);
  CHECK(rep.used_constraints);
}

TEST_CASE("identity checking rejects a perturbed candidate") {
  LqrsTable table;
  CheckConfig cfg;
  cfg.candidate = parse_expr("-1/5*D[t{1},t{1},t{1}](phi) - 3/4*D[t{1}](phi)*Q*D[t{1}](phi)");
  cfg.target = parse_expr("-1/2*D[t{1}](phi)*(R{2} + Q{2}*phi)");
  cfg.system = make_riccati_system({.max_time = 1});
  cfg.constraints = {riccati_rhs(2)};
  CheckReport rep = verify_identity(cfg, table);
  CHECK_FALSE(rep.verified);
  CHECK_FALSE(rep.residual.is_zero());
}
