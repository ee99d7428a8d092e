#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wnaforge/parser.hpp"
#include "wnaforge/solution.hpp"
#include "wnaforge/verify.hpp"

namespace wnaforge {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + std::string(e.what()));
  }
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw ConfigError("rational entries must be integers or \"p/q\" strings");
}

// {"rows": r, "cols": c, "data": [[entry, ...], ...]}
inline RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ConfigError("a matrix needs rows, cols and data fields");
  size_t rows = j.at("rows").get<size_t>();
  size_t cols = j.at("cols").get<size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows)
    throw ConfigError("matrix data must have exactly 'rows' rows");
  RationalMatrix m(rows, std::vector<Rational>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    if (!row.is_array() || row.size() != cols)
      throw ConfigError("matrix row " + std::to_string(i) + " must have 'cols' entries");
    for (size_t k = 0; k < cols; ++k) m[i][k] = rational_from_json(row[k]);
  }
  return m;
}

inline json matrix_to_json(const RationalMatrix& m) {
  json data = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const Rational& c : row) r.push_back(rational_to_string(c));
    data.push_back(std::move(r));
  }
  return json{{"rows", mat_rows(m)}, {"cols", mat_cols(m)}, {"data", std::move(data)}};
}

inline SolutionSpec solution_spec_from_json(const json& j) {
  for (const char* key : {"L", "R", "K", "phi0"})
    if (!j.contains(key))
      throw ConfigError(std::string("solution spec needs field '") + key + "'");
  SolutionSpec spec{matrix_from_json(j.at("L")), matrix_from_json(j.at("R")),
                    matrix_from_json(j.at("K")), matrix_from_json(j.at("phi0"))};
  spec.validate();
  return spec;
}

// Flow names as typed on a command line: t2, t12, th12, t{1,2}, th{1,2}.
// Without braces each digit is one index, so t12 is the composition word (1,2);
// indices of ten or more need the braced form.
inline VarIndex var_index_from_token(const std::string& s) {
  bool theta = s.size() >= 2 && s[0] == 't' && s[1] == 'h';
  size_t head = theta ? 2 : (!s.empty() && s[0] == 't' ? 1 : std::string::npos);
  if (head == std::string::npos || head >= s.size())
    throw ConfigError("flow name must look like t2, t12, th12 or t{1,2}: '" + s + "'");
  std::vector<int> idx;
  if (s[head] == '{') {
    if (s.back() != '}') throw ConfigError("unterminated index list in '" + s + "'");
    std::string body = s.substr(head + 1, s.size() - head - 2);
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t comma = body.find(',', pos);
      std::string piece = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      try {
        idx.push_back(std::stoi(piece));
      } catch (const std::exception&) {
        throw ConfigError("bad index '" + piece + "' in '" + s + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else {
    for (size_t i = head; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw ConfigError("flow name must look like t2, t12, th12 or t{1,2}: '" + s + "'");
      idx.push_back(s[i] - '0');
    }
  }
  if (theta) {
    if (idx.size() != 2)
      throw ConfigError("a theta direction needs exactly two indices: '" + s + "'");
    return VarIndex::theta(idx[0], idx[1]);
  }
  return VarIndex::time(std::move(idx));
}

namespace detail {

inline void symbols_into(SymbolTable& table, const json& j) {
  if (!j.contains("symbols")) return;
  for (const auto& [name, constant] : j.at("symbols").items())
    table.constant[name] = constant.get<bool>();
}

inline RiccatiSystemOptions riccati_options_from_json(const json& j) {
  RiccatiSystemOptions opts;
  opts.max_time = j.value("max_time", 1);
  if (j.contains("thetas"))
    for (const json& p : j.at("thetas"))
      opts.thetas.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  if (j.contains("words"))
    for (const json& w : j.at("words")) opts.words.push_back(w.get<std::vector<int>>());
  if (j.contains("word_prefixes")) opts.with_word_prefixes = j.at("word_prefixes").get<bool>();
  return opts;
}

}  // namespace detail

// A flow system plus the pairs to check, read from a fixture file:
//   {"kind": "flow-system", "symbols": {...}, "dynamic": "u",
//    "flows": [{"var": "t{2}", "rhs": "..."}], "riccati": {...}, "pairs": [["t{2}","th{1,2}"]]}
struct FlowFixture {
  SymbolTable names = SymbolTable::standard();
  Symbol dynamic = phi_symbol();
  FlowSystem system;
  std::vector<std::pair<VarIndex, VarIndex>> pairs;
};

inline FlowFixture flow_fixture_from_json(const json& j) {
  if (j.value("kind", "flow-system") != "flow-system")
    throw ConfigError("fixture kind '" + j.value("kind", "") + "' is not flow-system");
  FlowFixture fx;
  detail::symbols_into(fx.names, j);
  if (j.contains("dynamic")) {
    std::string d = j.at("dynamic").get<std::string>();
    fx.names.constant[d] = false;
    fx.dynamic = Symbol{d, {}, false};
  }
  if (j.contains("riccati")) {
    if (fx.dynamic.name != "phi")
      throw ConfigError("the riccati generator drives phi; drop 'dynamic' or set it to phi");
    FlowSystem gen = make_riccati_system(detail::riccati_options_from_json(j.at("riccati")));
    for (const auto& [k, rhs] : gen.flows()) fx.system.define(k.symbol, k.var, rhs);
  }
  if (j.contains("flows"))
    for (const json& f : j.at("flows"))
      fx.system.define(fx.dynamic, var_index_from_token(f.at("var").get<std::string>()),
                       parse_expr(f.at("rhs").get<std::string>(), fx.names));
  if (fx.system.flows().empty()) throw ConfigError("flow system fixture defines no flows");
  if (j.contains("pairs"))
    for (const json& p : j.at("pairs"))
      fx.pairs.emplace_back(var_index_from_token(p.at(0).get<std::string>()),
                            var_index_from_token(p.at(1).get<std::string>()));
  return fx;
}

// Identity check configuration:
//   {"kind": "check", "candidate": "...", "target": "...", "riccati": {...},
//    "constraints": ["..."], "closure_order": 3, "membership_margin": 1}
inline CheckConfig check_config_from_json(const json& j) {
  if (j.value("kind", "check") != "check")
    throw ConfigError("fixture kind '" + j.value("kind", "") + "' is not check");
  SymbolTable names = SymbolTable::standard();
  detail::symbols_into(names, j);
  CheckConfig cfg;
  if (!j.contains("candidate")) throw ConfigError("check fixture needs a candidate expression");
  cfg.candidate = parse_expr(j.at("candidate").get<std::string>(), names);
  if (j.contains("target")) cfg.target = parse_expr(j.at("target").get<std::string>(), names);
  if (j.contains("riccati"))
    cfg.system = make_riccati_system(detail::riccati_options_from_json(j.at("riccati")));
  if (j.contains("flows")) {
    Symbol dyn = phi_symbol();
    if (j.contains("dynamic")) {
      std::string d = j.at("dynamic").get<std::string>();
      names.constant[d] = false;
      dyn = Symbol{d, {}, false};
    }
    for (const json& f : j.at("flows"))
      cfg.system.define(dyn, var_index_from_token(f.at("var").get<std::string>()),
                        parse_expr(f.at("rhs").get<std::string>(), names));
  }
  if (j.contains("constraints"))
    for (const json& c : j.at("constraints"))
      cfg.constraints.push_back(parse_expr(c.get<std::string>(), names));
  cfg.closure_order = j.value("closure_order", cfg.closure_order);
  cfg.membership_margin = j.value("membership_margin", cfg.membership_margin);
  return cfg;
}

}  // namespace wnaforge
