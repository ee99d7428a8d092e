#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wnaforge/derivation.hpp"
#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

// Names the parser accepts and whether they are killed by derivatives.
// Indexed occurrences (L{2}, h{3}) inherit the base name's constancy.
struct SymbolTable {
  std::map<std::string, bool> constant;
  bool strict = true;

  static SymbolTable standard() {
    SymbolTable t;
    t.constant = {{"phi", false}, {"u", false}, {"f", false}, {"h", false},
                  {"nu", true},   {"L", true},  {"Q", true},  {"R", true},
                  {"S", true},    {"K", true}};
    return t;
  }

  Symbol make(const std::string& name, std::vector<int> sub) const {
    auto it = constant.find(name);
    if (it == constant.end()) {
      if (strict) throw ParseError("unknown symbol '" + name + "'");
      return Symbol{name, std::move(sub), false};
    }
    return Symbol{name, std::move(sub), it->second};
  }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, const SymbolTable& table, const DerivationRules& rules)
      : src_(src), table_(table), rules_(rules) {}

  NcExpr parse() {
    NcExpr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string_view src_;
  const SymbolTable& table_;
  const DerivationRules& rules_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  int peek() {
    skip_ws();
    return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1;
  }

  NcExpr parse_sum() {
    NcExpr e = eat('-') ? -parse_product() : parse_product();
    for (;;) {
      if (eat('+'))
        e += parse_product();
      else if (eat('-'))
        e -= parse_product();
      else
        return e;
    }
  }

  NcExpr parse_product() {
    NcExpr e = parse_factor();
    while (eat('*')) e = e * parse_factor();
    return e;
  }

  NcExpr parse_factor() {
    int c = peek();
    if (c == '(') {
      ++pos_;
      NcExpr e = parse_sum();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -parse_factor();
    }
    if (std::isdigit(c)) return NcExpr::scalar(parse_rational());
    if (std::isalpha(c) || c == '_') return parse_symbolic();
    fail("expected a factor");
  }

  Rational parse_rational() {
    Integer num = parse_integer();
    size_t save = pos_;
    if (eat('/')) {
      if (std::isdigit(peek())) return Rational(num) / Rational(parse_integer());
      pos_ = save;
    }
    return Rational(num);
  }

  Integer parse_integer() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(src_.substr(start, pos_ - start)));
  }

  std::string parse_name() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }

  std::vector<int> parse_index_list() {
    expect('{');
    std::vector<int> idx;
    do {
      Integer n = parse_integer();
      idx.push_back(static_cast<int>(n));
    } while (eat(','));
    expect('}');
    return idx;
  }

  VarIndex parse_var() {
    std::string name = parse_name();
    std::vector<int> idx = parse_index_list();
    if (name == "t") return VarIndex::time(std::move(idx));
    if (name == "th") {
      if (idx.size() != 2) fail("th{} needs exactly two indices");
      return VarIndex::theta(idx[0], idx[1]);
    }
    fail("expected t{...} or th{...}");
  }

  // D[v1,...,vk](expr) differentiates eagerly, so a parsed expression is
  // already in atoms-with-decorations form.
  NcExpr parse_symbolic() {
    std::string name = parse_name();
    if (name == "D" && peek() == '[') {
      ++pos_;
      std::vector<VarIndex> vars;
      do vars.push_back(parse_var());
      while (eat(','));
      expect(']');
      expect('(');
      NcExpr inner = parse_sum();
      expect(')');
      return apply_derivative(vars, inner, rules_);
    }
    std::vector<int> sub;
    if (peek() == '{') sub = parse_index_list();
    return NcExpr::atom(Atom{table_.make(name, std::move(sub)), {}});
  }
};

}  // namespace detail

inline NcExpr parse_expr(std::string_view src, const SymbolTable& table = SymbolTable::standard(),
                         const DerivationRules& rules = DerivationRules::standard()) {
  return detail::ExprParser(src, table, rules).parse();
}

}  // namespace wnaforge
