#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wnaforge/commute.hpp"
#include "wnaforge/derive.hpp"
#include "wnaforge/hat.hpp"
#include "wnaforge/io_json.hpp"
#include "wnaforge/residuals.hpp"
#include "wnaforge/tau.hpp"
#include "wnaforge/xi.hpp"

namespace {

using namespace wnaforge;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIrreducible = 3;

struct GlobalOpts {
  int order = 5;
  std::string spec_file;
  std::string star = "ordinary";
  std::string format = "plain";
  std::string out_dir;
};

class Timer {
 public:
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

long long max_iter_from_env() {
  const char* s = std::getenv("WNAFORGE_MAX_ITER");
  if (!s) return kDefaultMaxFirings;
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw ConfigError("WNAFORGE_MAX_ITER must be an integer");
  }
}

fs::path resolve_fixture(const std::string& name) {
  if (name.empty()) throw ConfigError("no fixture given (positional name or --spec)");
  if (fs::exists(name)) return name;
  fs::path local = fs::path("fixtures") / (name + ".json");
  if (fs::exists(local)) return local;
  if (const char* dir = std::getenv("WNAFORGE_FIXTURES")) {
    fs::path p = fs::path(dir) / (name + ".json");
    if (fs::exists(p)) return p;
  }
  throw ConfigError("cannot resolve fixture '" + name + "' (tried the literal path, fixtures/" +
                    name + ".json and $WNAFORGE_FIXTURES)");
}

json load_fixture(const std::string& name) {
  return load_json_file(resolve_fixture(name).string());
}

struct StarChoice {
  enum Kind { Ordinary, Moyal, Composed } kind = Ordinary;
  int level = 2;
};

StarChoice parse_star(const std::string& s) {
  if (s == "ordinary") return {};
  if (s == "moyal") return {StarChoice::Moyal, 2};
  if (s == "composed") return {StarChoice::Composed, 2};
  if (s.rfind("composed:", 0) == 0) {
    int level = 0;
    try {
      level = std::stoi(s.substr(9));
    } catch (const std::exception&) {
      throw ConfigError("bad composed level in '--star " + s + "'");
    }
    if (level < 2) throw ConfigError("composed level must be at least 2");
    return {StarChoice::Composed, level};
  }
  throw ConfigError("star must be ordinary, moyal or composed:N");
}

// Files under --out hold only the deterministic payload; wall-clock time is
// reported on stdout alone so reruns write identical bytes.
void write_outputs(const GlobalOpts& g, const std::string& stem, const json& payload,
                   const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  if (g.out_dir.empty()) return;
  fs::create_directories(g.out_dir);
  std::ofstream(fs::path(g.out_dir) / (stem + ".json")) << payload.dump(2) << "\n";
  for (const auto& [name, text] : extra) std::ofstream(fs::path(g.out_dir) / name) << text;
}

void emit(const GlobalOpts& g, const json& payload, const std::string& plain,
          long long wall_ms, const std::string& latex = "") {
  if (g.format == "json") {
    json out = payload;
    out["wall_time_ms"] = wall_ms;
    std::cout << out.dump(2) << "\n";
  } else if (g.format == "latex" && !latex.empty()) {
    std::cout << latex;
  } else {
    std::cout << plain;
  }
}

json first_nonzero_monomial(const MatrixJet& m) {
  const JetRing& ring = m.ring();
  std::optional<std::tuple<int, JetKey, size_t, size_t>> best;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      for (const auto& [key, c] : m.at(i, j).terms()) {
        int w = ring.key_weight(key);
        if (!best || std::tuple(w, key) < std::tuple(std::get<0>(*best), std::get<1>(*best)))
          best = {w, key, i, j};
      }
  if (!best) return nullptr;
  auto [w, key, i, j] = *best;
  std::string mono = key == 0 ? "1" : ring.key_str(key);
  return mono + " in entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string schur_op_plain(const SchurOp& op) {
  if (op.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : op.terms()) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    std::string term;
    if (key.empty()) {
      term = rational_to_string(mag);
    } else {
      if (mag != 1) term = rational_to_string(mag) + "*";
      term += "D[";
      for (size_t i = 0; i < key.size(); ++i) {
        if (i) term += ",";
        term += key[i].str();
      }
      term += "]";
    }
    if (first)
      out += neg ? "-" + term : term;
    else
      out += neg ? " - " + term : " + " + term;
    first = false;
  }
  return out;
}

int cmd_verify_commute(const GlobalOpts& g, const std::string& fixture,
                       const std::vector<std::string>& flow_tokens) {
  Timer timer;
  FlowFixture fx = flow_fixture_from_json(load_fixture(fixture));
  std::vector<std::pair<VarIndex, VarIndex>> pairs = fx.pairs;
  if (!flow_tokens.empty()) {
    if (flow_tokens.size() != 2)
      throw ConfigError("give exactly two flow names to pick one pair");
    pairs = {{var_index_from_token(flow_tokens[0]), var_index_from_token(flow_tokens[1])}};
  }
  if (pairs.empty())
    throw ConfigError("nothing to check: the fixture lists no pairs and none were given");

  long long max_iter = max_iter_from_env();
  LqrsTable table;
  json rows = json::array();
  std::string plain;
  bool ok = true;
  for (const auto& [v, w] : pairs) {
    CommuteReport r = check_commute(fx.system, v, w, table, fx.dynamic, max_iter);
    json aux = json::array();
    for (const VarIndex& u : r.aux) aux.push_back(u.str());
    rows.push_back({{"pair", json::array({v.str(), w.str()})},
                    {"status", to_string(r.status)},
                    {"aux", std::move(aux)},
                    {"residual", render_plain(r.residual)},
                    {"firings", r.firings}});
    plain += v.str() + " , " + w.str() + ": " + to_string(r.status);
    if (!r.aux.empty()) {
      plain += " modulo";
      for (const VarIndex& u : r.aux) plain += " " + u.str();
    }
    plain += "\n";
    if (r.status == CommuteStatus::fail) {
      ok = false;
      plain += "  residual: " + render_plain(r.residual) + "\n";
    }
  }
  json payload = {{"command", "verify-commute"}, {"pairs", std::move(rows)}, {"all_commute", ok}};
  write_outputs(g, "verify-commute", payload);
  emit(g, payload, plain, timer.ms());
  return ok ? kExitOk : kExitVerify;
}

int cmd_check(const GlobalOpts& g, const std::string& fixture) {
  Timer timer;
  CheckConfig cfg = check_config_from_json(load_fixture(fixture));
  cfg.max_iter = max_iter_from_env();
  LqrsTable table;
  CheckReport rep = verify_identity(cfg, table);
  json payload = {{"command", "check"},
                  {"verified", rep.verified},
                  {"used_constraints", rep.used_constraints},
                  {"used_membership", rep.used_membership},
                  {"residual", render_plain(rep.residual)},
                  {"firings", rep.firings}};
  std::string plain;
  if (rep.verified) {
    plain = "verified: candidate equals target";
    if (rep.used_membership)
      plain += " (modulo the constraint ideal)";
    else if (rep.used_constraints)
      plain += " (after constraint rewriting)";
    plain += "\n";
  } else {
    plain = "FAILED: residual " + render_plain(rep.residual) + "\n";
  }
  write_outputs(g, "check", payload);
  emit(g, payload, plain, timer.ms());
  return rep.verified ? kExitOk : kExitVerify;
}

int cmd_derive(const GlobalOpts& g, const std::string& kind, const std::vector<int>& idx,
               int depth, int show_h) {
  Timer timer;
  HTable table(depth);
  DerivedEquation eq;
  std::string stem = kind;
  for (int m : idx) stem += "-" + std::to_string(m);
  if (kind == "theta") {
    if (idx.size() != 2) throw ConfigError("derive theta needs exactly two indices");
    eq = derive_theta_equation(idx[0], idx[1], table);
  } else {
    eq = derive_composition_equation(idx, table);
  }

  NcExpr f_lhs = NcExpr::atom(Atom{Symbol{"f", {}, false}, {eq.var}});
  NcExpr phi_lhs = NcExpr::atom(Atom{phi_symbol(), {eq.var}});
  std::string plain = render_plain(f_lhs) + " = " + render_plain(eq.f_rhs) + "\n" +
                      render_plain(phi_lhs) + " = " + render_plain(eq.phi_rhs) + "\n";
  std::string latex = render_latex(f_lhs) + " &= " + render_latex(eq.f_rhs) + " \\\\\n" +
                      render_latex(phi_lhs) + " &= " + render_latex(eq.phi_rhs) + "\n";
  json h_lists = json::object();
  for (int k = 2; k <= show_h; ++k) {
    NcExpr hk = table.table(1, k - 1);
    plain += "h{" + std::to_string(k) + "} = " + render_plain(hk) + "\n";
    latex += "h_" + std::to_string(k) + " &= " + render_latex(hk) + " \\\\\n";
    h_lists["h{" + std::to_string(k) + "}"] = render_plain(hk);
  }
  json payload = {{"command", "derive"},
                  {"var", eq.var.str()},
                  {"f_rhs", render_plain(eq.f_rhs)},
                  {"phi_rhs", render_plain(eq.phi_rhs)},
                  {"f_rhs_latex", render_latex(eq.f_rhs)},
                  {"phi_rhs_latex", render_latex(eq.phi_rhs)},
                  {"h", std::move(h_lists)}};
  write_outputs(g, stem, payload, {{stem + ".txt", plain}, {stem + ".tex", latex}});
  emit(g, payload, plain, timer.ms(), latex);
  return kExitOk;
}

int cmd_solve(const GlobalOpts& g, const std::string& fixture, int max_time) {
  Timer timer;
  SolutionSpec spec = solution_spec_from_json(load_fixture(fixture));
  StarChoice sc = parse_star(g.star);
  if (max_time < 2) throw ConfigError("--max-time must be at least 2");

  // The closed solution divides by I + K*phi0; inside the jet ring the star
  // inverse always exists (its constant part is the identity), so degenerate
  // input data is rejected up front instead.
  try {
    mat_inverse(mat_add(mat_identity(spec.n()), mat_mul(spec.K, spec.phi0)));
  } catch (const ConfigError&) {
    json payload = {{"command", "solve"}, {"error", "I + K*phi0 is singular"}};
    write_outputs(g, "solve", payload);
    emit(g, payload, "FAILED: I + K*phi0 is singular\n", timer.ms());
    return kExitVerify;
  }

  std::vector<VarIndex> vars;
  for (int m = 1; m <= max_time; ++m) vars.push_back(VarIndex::time(m));
  if (sc.kind == StarChoice::Moyal) vars.push_back(VarIndex::theta(1, 2));
  if (sc.kind == StarChoice::Composed) vars.push_back(VarIndex::time({1, 2}));
  JetRing ring(vars, g.order);
  StarSpec star = sc.kind == StarChoice::Ordinary
                      ? StarSpec::ordinary()
                      : sc.kind == StarChoice::Moyal
                            ? StarSpec::moyal(1, 2, VarIndex::theta(1, 2))
                            : StarSpec::composed(ring, sc.level);
  MatrixJet phi = phi_solution(spec, ring, star);

  std::vector<std::pair<std::string, MatrixJet>> residuals;
  for (int n = 1; n <= std::min(3, max_time); ++n)
    residuals.emplace_back(VarIndex::time(n).str(), residual_single_flow(spec, n, g.order));
  residuals.emplace_back("frame(1,1,1)", residual_frame_flow(spec, 1, 1, 1, g.order));
  residuals.emplace_back("hierarchy(1,2)", residual_hierarchy(spec, 1, 2, g.order));
  if (sc.kind == StarChoice::Moyal)
    residuals.emplace_back("th{1,2}",
                           residual_deformation(spec, VarIndex::theta(1, 2), g.order));
  if (sc.kind == StarChoice::Composed)
    residuals.emplace_back("t{1,2}",
                           residual_deformation(spec, VarIndex::time({1, 2}), g.order));

  json rows = json::array();
  std::string plain;
  bool ok = true;
  for (const auto& [name, r] : residuals) {
    bool zero = r.is_zero();
    ok = ok && zero;
    rows.push_back({{"flow", name},
                    {"residual_zero", zero},
                    {"first_nonzero_monomial", first_nonzero_monomial(r)},
                    {"order_checked", g.order}});
    plain += "residual " + name + ": " + (zero ? "0" : "NONZERO") + "\n";
  }
  json payload = {{"command", "solve"}, {"star", g.star},          {"order", g.order},
                  {"rows", spec.m()},   {"cols", spec.n()},        {"residuals", std::move(rows)},
                  {"all_zero", ok}};

  std::string csv = "row,col,monomial,coefficient\n";
  for (size_t i = 0; i < phi.rows(); ++i)
    for (size_t j = 0; j < phi.cols(); ++j)
      for (const auto& [key, c] : phi.at(i, j).terms())
        csv += std::to_string(i) + "," + std::to_string(j) + ",\"" +
               (key == 0 ? "1" : ring.key_str(key)) + "\"," + rational_to_string(c) + "\n";
  write_outputs(g, "solve", payload, {{"solution.csv", csv}});
  emit(g, payload, plain, timer.ms());
  return ok ? kExitOk : kExitVerify;
}

int cmd_tau(const GlobalOpts& g, const std::string& fixture, int max_time,
            const std::vector<int>& pair) {
  Timer timer;
  if (g.star != "ordinary")
    throw ConfigError("the tau route is defined for the ordinary product only; drop --star " +
                      g.star);
  SolutionSpec spec = solution_spec_from_json(load_fixture(fixture));
  if (mat_rank(spec.coupling(1)) != 1)
    throw ConfigError("the tau route needs a rank-one coupling R*K - K*L");
  int m = pair.at(0), n = pair.at(1);
  if (m < 1 || n < 1 || m == n) throw ConfigError("--pair needs two distinct positive indices");
  if (max_time < std::max(m, n) + 1)
    throw ConfigError("--max-time must reach past the hierarchy pair");

  // One extra order feeds the t1-derivative of tau, and the pair spends
  // m + n + 1 more; the residual below is exact through --order.
  JetRing ring = single_time_ring(max_time, g.order + m + n + 2);
  TauReduction red = tau_reduction(spec, ring);
  MatrixJet phi = phi_solution(spec, ring, StarSpec::ordinary());
  int deep = ring.order() - 1;
  bool trace_ok =
      red.phihat.truncated(deep) == coupled_trace(spec, phi).truncated(deep);
  MatrixJet ph(ring, 1, 1);
  ph.at(0, 0) = red.phihat;
  bool resid_ok =
      residual_hierarchy_core(ph, {{Rational(1)}}, m, n).truncated(g.order).is_zero();
  bool ok = trace_ok && resid_ok;

  json payload = {{"command", "tau"},
                  {"tau_constant", rational_to_string(red.tau.constant_term())},
                  {"phihat_matches_coupled_trace", trace_ok},
                  {"hierarchy_pair", json::array({m, n})},
                  {"residual_zero", resid_ok},
                  {"order_checked", g.order}};
  std::string plain = std::string("tau constant term: ") +
                      rational_to_string(red.tau.constant_term()) + "\n" +
                      "phihat = d1(log tau) - tr R matches tr(Q*phi): " +
                      (trace_ok ? "yes" : "NO") + "\n" + "hierarchy(" + std::to_string(m) +
                      "," + std::to_string(n) + ") residual: " + (resid_ok ? "0" : "NONZERO") +
                      "\n";
  write_outputs(g, "tau", payload);
  emit(g, payload, plain, timer.ms());
  return ok ? kExitOk : kExitVerify;
}

int cmd_xi_check(const GlobalOpts& g, const std::string& ks_str, int max_m, int level,
                 int newton) {
  Timer timer;
  std::vector<Rational> ks;
  size_t pos = 0;
  while (pos <= ks_str.size()) {
    size_t comma = ks_str.find(',', pos);
    std::string piece =
        ks_str.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    ks.push_back(rational_from_string(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (ks.empty()) throw ConfigError("--ks needs at least one value");

  Jet residual = xi_product_residual(ks, max_m, level, g.order);
  bool xi_ok = residual.is_zero();
  json newton_rows = json::array();
  bool newton_ok = true;
  for (int n = 1; n <= newton; ++n) {
    bool okn = newton_minor_check(ks, n);
    newton_ok = newton_ok && okn;
    newton_rows.push_back({{"n", n}, {"holds", okn}});
  }
  bool ok = xi_ok && newton_ok;
  json ks_json = json::array();
  for (const Rational& k : ks) ks_json.push_back(rational_to_string(k));
  json payload = {{"command", "xi-check"},   {"ks", std::move(ks_json)},
                  {"max_m", max_m},          {"level", level},
                  {"order", g.order},        {"product_identity_zero", xi_ok},
                  {"newton", std::move(newton_rows)}};
  std::string plain = std::string("exponential product identity: ") +
                      (xi_ok ? "0" : "NONZERO") + "\nnewton reduction n<=" +
                      std::to_string(newton) + ": " + (newton_ok ? "holds" : "FAILS") + "\n";
  write_outputs(g, "xi-check", payload);
  emit(g, payload, plain, timer.ms());
  return ok ? kExitOk : kExitVerify;
}

int cmd_hat(const GlobalOpts& g, const std::string& fixture, int top, int show_eth) {
  Timer timer;
  if (g.star != "ordinary")
    throw ConfigError("hat builds its own composed tower product; --star does not apply");
  if (top < 2) throw ConfigError("--top must be at least 2");
  SolutionSpec spec = solution_spec_from_json(load_fixture(fixture));

  // Tower order top*order keeps every repeated-index monomial that the
  // restriction to t1 can still see at the output order.
  JetRing tower = ones_word_ring(top, top * g.order);
  MatrixJet phi7 = phi_solution(spec, tower, StarSpec::composed(tower, top));
  JetRing out = single_time_ring(top, g.order);
  MatrixJet rebuilt = hat_transform(phi7, out);
  MatrixJet plain_phi = phi_solution(spec, out, StarSpec::ordinary());
  bool match = rebuilt == plain_phi;
  bool resid_ok = residual_tower_hierarchy(spec, 1, 2, g.order).is_zero();
  bool ok = match && resid_ok;

  json eth = json::object();
  std::string eth_plain;
  for (int k = 1; k <= show_eth; ++k) {
    std::string s = schur_op_plain(eth_operator(k));
    eth["eth{" + std::to_string(k) + "}"] = s;
    eth_plain += "eth{" + std::to_string(k) + "} = " + s + "\n";
  }
  json payload = {{"command", "hat"},
                  {"top", top},
                  {"order", g.order},
                  {"tower_pair_residual_zero", resid_ok},
                  {"rebuild_matches_solution", match},
                  {"eth", std::move(eth)}};
  std::string plain = std::string("tower hierarchy(1,2) residual: ") +
                      (resid_ok ? "0" : "NONZERO") + "\n" +
                      "hat rebuild equals the single-time solution: " +
                      (match ? "yes" : "NO") + "\n" + eth_plain;
  write_outputs(g, "hat", payload);
  emit(g, payload, plain, timer.ms());
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for deformation flows of the noncommutative potential hierarchy"};
  app.require_subcommand(1);

  GlobalOpts g;
  auto add_globals = [&](CLI::App* cmd) {
    cmd->add_option("--order", g.order, "truncation order for series checks");
    cmd->add_option("--spec", g.spec_file, "fixture file (alternative to the positional name)");
    cmd->add_option("--star", g.star, "product: ordinary, moyal or composed:N");
    cmd->add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"plain", "json", "latex"}));
    cmd->add_option("--out", g.out_dir, "directory for report and equation files");
  };
  add_globals(&app);

  std::string fixture;
  std::vector<std::string> flow_tokens;
  auto* vc = app.add_subcommand("verify-commute", "check that flow pairs commute");
  vc->add_option("fixture", fixture, "flow-system fixture name or file")->required();
  vc->add_option("flows", flow_tokens, "two flow names selecting one pair");
  add_globals(vc);

  std::string check_fixture;
  auto* ck = app.add_subcommand("check", "verify an equation against a flow system");
  ck->add_option("fixture", check_fixture, "check fixture name or file")->required();
  add_globals(ck);

  std::string derive_kind;
  std::vector<int> derive_idx;
  int depth = 8, show_h = 0;
  auto* dv = app.add_subcommand("derive", "derive a deformation or composition flow equation");
  dv->add_option("kind", derive_kind, "theta or word")
      ->required()
      ->check(CLI::IsMember({"theta", "word"}));
  dv->add_option("indices", derive_idx, "flow indices")->required();
  dv->add_option("--depth", depth, "product table depth");
  dv->add_option("--show-h", show_h, "also print the reductions h{2}..h{K}");
  add_globals(dv);

  std::string solve_fixture;
  int max_time = 3;
  auto* sv = app.add_subcommand("solve", "build the closed solution and check residuals");
  sv->add_option("fixture", solve_fixture, "solution spec fixture name or file");
  sv->add_option("--max-time", max_time, "highest plain time variable in the ring");
  add_globals(sv);

  std::string tau_fixture;
  int tau_max_time = 3;
  std::vector<int> tau_pair = {1, 2};
  auto* tu = app.add_subcommand("tau", "scalar reduction through the determinant");
  tu->add_option("fixture", tau_fixture, "solution spec fixture name or file");
  tu->add_option("--max-time", tau_max_time, "highest plain time variable in the ring");
  tu->add_option("--pair", tau_pair, "hierarchy pair to check")->expected(2);
  add_globals(tu);

  std::string ks_str = "1,2";
  int max_m = 3, level = 2, newton = 3;
  auto* xi = app.add_subcommand("xi-check", "exponential product and minor-sum identities");
  xi->add_option("--ks", ks_str, "comma-separated eigenvalue list");
  xi->add_option("--max-m", max_m, "highest plain time index in the identity");
  xi->add_option("--level", level, "composition word length cap");
  xi->add_option("--newton", newton, "check the minor reduction for n up to this");
  add_globals(xi);

  std::string hat_fixture;
  int top = 3, show_eth = 2;
  auto* ht = app.add_subcommand("hat", "rebuild the multi-time solution from the tower");
  ht->add_option("fixture", hat_fixture, "solution spec fixture name or file");
  ht->add_option("--top", top, "highest recovered time index");
  ht->add_option("--show-eth", show_eth, "print recovered derivations up to this index");
  add_globals(ht);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (vc->parsed()) return cmd_verify_commute(g, fixture, flow_tokens);
    if (ck->parsed()) return cmd_check(g, check_fixture);
    if (dv->parsed()) return cmd_derive(g, derive_kind, derive_idx, depth, show_h);
    if (sv->parsed())
      return cmd_solve(g, solve_fixture.empty() ? g.spec_file : solve_fixture, max_time);
    if (tu->parsed())
      return cmd_tau(g, tau_fixture.empty() ? g.spec_file : tau_fixture, tau_max_time, tau_pair);
    if (xi->parsed()) return cmd_xi_check(g, ks_str, max_m, level, newton);
    if (ht->parsed())
      return cmd_hat(g, hat_fixture.empty() ? g.spec_file : hat_fixture, top, show_eth);
  } catch (const IrreducibleError& e) {
    std::cerr << "irreducible: " << e.what() << "\n";
    return kExitIrreducible;
  } catch (const wnaforge::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
