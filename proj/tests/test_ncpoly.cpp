#include <catch2/catch_amalgamated.hpp>

#include "wnaforge/derivation.hpp"
#include "wnaforge/nc_expr.hpp"
#include "wnaforge/parser.hpp"
#include "wnaforge/render.hpp"
#include "wnaforge/rewrite.hpp"

using namespace wnaforge;

namespace {

NcExpr atom(const char* name, std::vector<VarIndex> derivs = {}, bool constant = false) {
  return NcExpr::atom(Atom{Symbol{name, {}, constant}, std::move(derivs)});
}

const NcExpr a = atom("a");
const NcExpr b = atom("b");
const NcExpr c = atom("c");

NcExpr d(const VarIndex& v, const NcExpr& e) { return apply_derivative(v, e); }

}  // namespace

TEST_CASE("rational literals round-trip") {
  CHECK(rational_to_string(rational_from_string("-3/6")) == "-1/2");
  CHECK(rational_to_string(rational_from_string("7")) == "7");
  CHECK(rational_from_string("2/4") == Rational(1) / 2);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string("x"), ParseError);
}

TEST_CASE("theta indices normalize to ascending order") {
  CHECK(VarIndex::theta(3, 1) == VarIndex::theta(1, 3));
  auto [v, sign] = VarIndex::theta_oriented(3, 1);
  CHECK(v == VarIndex::theta(1, 3));
  CHECK(sign == -1);
  CHECK(VarIndex::theta_oriented(1, 3).second == 1);
  CHECK_THROWS_AS(VarIndex::theta(2, 2), ConfigError);
  CHECK(VarIndex::time({1, 2}).str() == "t{1,2}");
  CHECK(VarIndex::theta(1, 2).str() == "th{1,2}");
}

TEST_CASE("expression arithmetic is normalized") {
  NcExpr e = a * b - b * a;
  CHECK(e.size() == 2);
  CHECK((e + b * a - a * b).is_zero());
  CHECK((a * (b + c)) == a * b + a * c);
  CHECK(((a + b) * c) == a * c + b * c);
  CHECK((a * b) * c == a * (b * c));
  CHECK((Rational(0) * a).is_zero());
  NcExpr again = normalize(e);
  CHECK(again == e);
}

TEST_CASE("product rule for plain time derivatives") {
  VarIndex t1 = VarIndex::time(1);
  CHECK(d(t1, a * b) == d(t1, a) * b + a * d(t1, b));
  CHECK(d(t1, a * b * c) ==
        d(t1, a) * b * c + a * d(t1, b) * c + a * b * d(t1, c));
}

TEST_CASE("constants are killed by every derivative") {
  NcExpr L = atom("L", {}, true);
  VarIndex t2 = VarIndex::time(2);
  CHECK(d(t2, L).is_zero());
  CHECK(d(t2, L * a) == L * d(t2, a));
  CHECK(d(VarIndex::theta(1, 2), L * a * L) == L * d(VarIndex::theta(1, 2), a) * L);
}

TEST_CASE("deformation derivative obeys the twisted product rule") {
  VarIndex th = VarIndex::theta(1, 2);
  VarIndex t1 = VarIndex::time(1);
  VarIndex t2 = VarIndex::time(2);
  Rational half(1, 2);
  NcExpr expect = d(th, a) * b + a * d(th, b) + half * (d(t1, a) * d(t2, b)) -
                  half * (d(t2, a) * d(t1, b));
  CHECK(d(th, a * b) == expect);
}

TEST_CASE("composition derivative splits along prefixes") {
  VarIndex t12 = VarIndex::time({1, 2});
  NcExpr expect = d(t12, a) * b + d(VarIndex::time(1), a) * d(VarIndex::time(2), b) +
                  a * d(t12, b);
  CHECK(d(t12, a * b) == expect);

  // Length three agrees whether split as (ab)c or a(bc).
  VarIndex t123 = VarIndex::time({1, 2, 3});
  NcExpr via_left = NcExpr::zero();
  // Manual two-factor split of t{1,2,3} applied to (a*b) x c.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> cuts = {
      {{}, {1, 2, 3}}, {{1}, {2, 3}}, {{1, 2}, {3}}, {{1, 2, 3}, {}}};
  for (const auto& [lft, rgt] : cuts) {
    NcExpr l = lft.empty() ? a * b : d(VarIndex::time(lft), a * b);
    NcExpr r = rgt.empty() ? c : d(VarIndex::time(rgt), c);
    via_left += l * r;
  }
  CHECK(d(t123, a * b * c) == via_left);
}

TEST_CASE("mixed partial derivatives commute") {
  std::vector<VarIndex> vars = {VarIndex::time(1), VarIndex::theta(1, 2),
                                VarIndex::time({2, 2}), VarIndex::theta(2, 3)};
  NcExpr e = a * b + Rational(2) * b * a * c;
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      CHECK(d(vars[i], d(vars[j], e)) == d(vars[j], d(vars[i], e)));
}

TEST_CASE("restricted rule sets reject unknown derivatives") {
  DerivationRules rules = DerivationRules::restricted();
  rules.add(standard_rule(VarIndex::time(1)));
  CHECK_NOTHROW(apply_derivative(VarIndex::time(1), a * b, rules));
  CHECK_THROWS_AS(apply_derivative(VarIndex::time(2), a * b, rules), MissingRuleError);
}

TEST_CASE("contains-mode rules follow an atom into higher derivatives") {
  // phi_{t2} -> a*b, so phi_{t1 t2} must become (a*b)_{t1}.
  VarIndex t1 = VarIndex::time(1);
  VarIndex t2 = VarIndex::time(2);
  NcExpr phi12 = atom("phi", {t1, t2});
  auto rule = RewriteRule::derivative_of("flow", Symbol{"phi", {}, false}, {t2}, a * b);
  NcExpr out = rewrite_fixpoint(phi12, {rule});
  CHECK(out == d(t1, a * b));

  // Underived phi is untouched.
  CHECK(rewrite_fixpoint(atom("phi"), {rule}) == atom("phi"));
}

TEST_CASE("exact rules replace only the exact atom") {
  auto rule = RewriteRule::exact_atom("swap", Atom{Symbol{"a", {}, false}, {}}, b);
  CHECK(rewrite_fixpoint(a * a, {rule}) == b * b);
  NcExpr a1 = atom("a", {VarIndex::time(1)});
  CHECK(rewrite_fixpoint(a1, {rule}) == a1);
}

TEST_CASE("runaway rewriting is reported with its residual") {
  auto rule = RewriteRule::exact_atom("grow", Atom{Symbol{"u", {}, false}, {}},
                                      atom("u") * atom("u"));
  RewriteStats stats;
  try {
    rewrite_fixpoint(atom("u"), {rule}, DerivationRules::standard(), 50, &stats);
    FAIL("expected NonTerminationError");
  } catch (const NonTerminationError& err) {
    CHECK(!err.residual.is_zero());
  }
}

TEST_CASE("word rules rewrite contiguous subwords") {
  Word pat = {Atom{Symbol{"a", {}, false}, {}}, Atom{Symbol{"b", {}, false}, {}}};
  WordRewriteRule rule{"ab->c", pat, c};
  CHECK(word_rewrite_fixpoint(a * b, {rule}) == c);
  CHECK(word_rewrite_fixpoint(c * a * b * a, {rule}) == c * c * a);
  CHECK(word_rewrite_fixpoint(b * a, {rule}) == b * a);
  // Overlapping matches resolve left to right and re-reduce.
  CHECK(word_rewrite_fixpoint(a * a * b * b, {rule}, 100) ==
        word_rewrite_fixpoint(a * c * b, {rule}, 100));
}

TEST_CASE("parser accepts the expression grammar") {
  NcExpr phi = NcExpr::atom(Atom{Symbol{"phi", {}, false}, {}});
  NcExpr Q = NcExpr::atom(Atom{Symbol{"Q", {}, true}, {}});
  VarIndex t1 = VarIndex::time(1);
  CHECK(parse_expr("phi*Q*phi") == phi * Q * phi);
  CHECK(parse_expr("2*phi - phi - phi").is_zero());
  CHECK(parse_expr("D[t{1}](phi*Q*phi)") == d(t1, phi * Q * phi));
  CHECK(parse_expr("-1/2*(phi + phi)") == -phi);
  CHECK(parse_expr("D[t{1},t{1}](phi)") == d(t1, d(t1, phi)));
  CHECK(parse_expr("D[th{1,2}](L{2})").is_zero());
  CHECK(parse_expr("L{2}*phi") == NcExpr::atom(Atom{Symbol{"L", {2}, true}, {}}) * phi);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_expr("phi +"), ParseError);
  CHECK_THROWS_AS(parse_expr("w{1}"), ParseError);
  CHECK_THROWS_AS(parse_expr("D[x{1}](phi)"), ParseError);
  CHECK_THROWS_AS(parse_expr("th{1,1}"), ParseError);
  CHECK_THROWS_AS(parse_expr("D[th{1,1}](phi)"), ConfigError);
  CHECK_THROWS_AS(parse_expr("phi)"), ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
}

TEST_CASE("rendering is canonical and parses back") {
  std::string canonical =
      "-1/6*D[t{1},t{1},t{1}](phi) + 1/6*D[t{3}](phi) - D[t{1}](phi)*Q*D[t{1}](phi)";
  NcExpr e = parse_expr(canonical);
  CHECK(render_plain(e) == canonical);
  CHECK(parse_expr("1/6*(D[t{3}](phi) - D[t{1},t{1},t{1}](phi)) - "
                   "D[t{1}](phi)*Q*D[t{1}](phi)") == e);
  CHECK(render_plain(NcExpr::zero()) == "0");
  CHECK(render_plain(NcExpr::scalar(Rational(-3, 4))) == "-3/4");
  CHECK(parse_expr(render_plain(e)) == e);
}

TEST_CASE("latex rendering uses subscripted derivatives") {
  NcExpr e = parse_expr("1/2*D[t{1},th{2,3}](phi)*L{2}");
  CHECK(render_latex(e) == "\\tfrac{1}{2} \\phi_{t_1 \\theta_{23}} L_{2}");
  CHECK(render_latex(parse_expr("-phi")) == "-\\phi");
}
