#pragma once

#include <string>

#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

namespace detail {

inline std::string render_subscript(const std::vector<int>& sub) {
  std::string s = "{";
  for (size_t i = 0; i < sub.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sub[i]);
  }
  return s + "}";
}

inline std::string render_atom_plain(const Atom& a) {
  std::string base = a.symbol.name;
  if (!a.symbol.sub.empty()) base += render_subscript(a.symbol.sub);
  if (a.derivs.empty()) return base;
  std::string s = "D[";
  for (size_t i = 0; i < a.derivs.size(); ++i) {
    if (i) s += ",";
    s += a.derivs[i].str();
  }
  return s + "](" + base + ")";
}

inline std::string render_atom_latex(const Atom& a) {
  static const std::map<std::string, std::string> greek = {
      {"phi", "\\phi"}, {"nu", "\\nu"}, {"theta", "\\theta"}};
  auto it = greek.find(a.symbol.name);
  std::string base = it != greek.end() ? it->second : a.symbol.name;
  if (!a.symbol.sub.empty()) {
    base += "_{";
    for (int n : a.symbol.sub) base += std::to_string(n);
    base += "}";
  }
  if (a.derivs.empty()) return base;
  std::string s = base + "_{";
  for (size_t i = 0; i < a.derivs.size(); ++i) {
    if (i) s += " ";
    s += a.derivs[i].latex();
  }
  return s + "}";
}

inline std::string render_coeff_latex(const Rational& mag) {
  if (denominator(mag) == 1) return numerator(mag).str();
  return "\\tfrac{" + numerator(mag).str() + "}{" + denominator(mag).str() + "}";
}

}  // namespace detail

// Canonical text form: terms in the monomial order of the underlying map, so
// equal expressions render identically and parse back to themselves.
inline std::string render_plain(const NcExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    std::string term;
    if (w.empty()) {
      term = rational_to_string(mag);
    } else {
      if (mag != 1) term = rational_to_string(mag) + "*";
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) term += "*";
        term += detail::render_atom_plain(w[i]);
      }
    }
    if (first)
      out += neg ? "-" + term : term;
    else
      out += neg ? " - " + term : " + " + term;
    first = false;
  }
  return out;
}

inline std::string render_latex(const NcExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    std::string term;
    if (w.empty()) {
      term = detail::render_coeff_latex(mag);
    } else {
      if (mag != 1) term = detail::render_coeff_latex(mag) + " ";
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) term += " ";
        term += detail::render_atom_latex(w[i]);
      }
    }
    if (first)
      out += neg ? "-" + term : term;
    else
      out += neg ? " - " + term : " + " + term;
    first = false;
  }
  return out;
}

}  // namespace wnaforge
