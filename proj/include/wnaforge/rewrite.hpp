#pragma once

#include <map>
#include <string>
#include <vector>

#include "wnaforge/derivation.hpp"
#include "wnaforge/nc_expr.hpp"

namespace wnaforge {

// Atom-pattern rule. Two matching modes:
//   exact:    atom == (symbol, anchor)            -> replacement
//   contains: symbol matches and anchor is a sub-multiset of the atom's
//             derivatives -> replacement differentiated by the leftover
//             multiset. This is how flow equations follow an expression
//             into its higher derivatives.
struct RewriteRule {
  std::string name;
  Symbol symbol;
  std::vector<VarIndex> anchor;
  bool exact = true;
  NcExpr replacement;

  static RewriteRule exact_atom(std::string name, Atom pattern, NcExpr repl) {
    return RewriteRule{std::move(name), pattern.symbol, pattern.derivs, true, std::move(repl)};
  }
  static RewriteRule derivative_of(std::string name, Symbol symbol, std::vector<VarIndex> anchor,
                                   NcExpr repl) {
    std::sort(anchor.begin(), anchor.end());
    return RewriteRule{std::move(name), std::move(symbol), std::move(anchor), false,
                       std::move(repl)};
  }

  // On a contains-match, returns the leftover derivative multiset.
  bool matches(const Atom& a, std::vector<VarIndex>* leftover = nullptr) const {
    if (!(a.symbol == symbol)) return false;
    if (exact) return a.derivs == anchor;
    std::vector<VarIndex> rest;
    auto it = a.derivs.begin();
    for (const auto& want : anchor) {
      it = std::find(it, a.derivs.end(), want);
      if (it == a.derivs.end()) return false;
      ++it;
    }
    // anchor is a sub-multiset; compute the complement.
    rest = a.derivs;
    for (const auto& want : anchor) {
      auto pos = std::find(rest.begin(), rest.end(), want);
      rest.erase(pos);
    }
    if (leftover) *leftover = std::move(rest);
    return true;
  }
};

struct RewriteStats {
  long long firings = 0;
  std::map<std::string, long long> by_rule;
};

struct NonTerminationError : std::runtime_error {
  NcExpr residual;
  NonTerminationError(long long max_iter, NcExpr at)
      : std::runtime_error("rewriting exceeded " + std::to_string(max_iter) + " rule firings"),
        residual(std::move(at)) {}
};

inline constexpr long long kDefaultMaxFirings = 10000;

namespace detail {

// Replaces the first matching atom in each term (if any); the replacement is
// not rescanned within the same sweep.
inline bool apply_rule_once(const RewriteRule& rule, const DerivationRules& derivs, NcExpr& e,
                            RewriteStats& stats) {
  NcExpr out;
  bool fired = false;
  for (const auto& [w, c] : e.terms()) {
    size_t hit = w.size();
    std::vector<VarIndex> leftover;
    for (size_t i = 0; i < w.size(); ++i)
      if (rule.matches(w[i], &leftover)) {
        hit = i;
        break;
      }
    if (hit == w.size()) {
      out.add_term(w, c);
      continue;
    }
    fired = true;
    ++stats.firings;
    ++stats.by_rule[rule.name];
    NcExpr repl =
        rule.exact ? rule.replacement : apply_derivative(leftover, rule.replacement, derivs);
    NcExpr prefix = NcExpr::word(Word(w.begin(), w.begin() + hit));
    NcExpr suffix = NcExpr::word(Word(w.begin() + hit + 1, w.end()));
    out += c * (prefix * repl * suffix);
  }
  if (fired) e = std::move(out);
  return fired;
}

}  // namespace detail

// Applies the rules left-to-right in sequence, each to fixpoint, sweeping the
// sequence until nothing fires. Firing count is bounded by max_iter; on
// overflow the partially reduced expression rides along in the error.
inline NcExpr rewrite_fixpoint(NcExpr e, const std::vector<RewriteRule>& rules,
                               const DerivationRules& derivs = DerivationRules::standard(),
                               long long max_iter = kDefaultMaxFirings,
                               RewriteStats* stats_out = nullptr) {
  RewriteStats stats;
  bool sweep_fired = true;
  while (sweep_fired) {
    sweep_fired = false;
    for (const auto& rule : rules) {
      while (detail::apply_rule_once(rule, derivs, e, stats)) {
        sweep_fired = true;
        if (stats.firings > max_iter) throw NonTerminationError(max_iter, std::move(e));
      }
    }
  }
  if (stats_out) *stats_out = std::move(stats);
  return e;
}

// Contiguous-subword rule, used internally by identity verification to
// reduce modulo algebraic constraints oriented at their leading word.
struct WordRewriteRule {
  std::string name;
  Word pattern;
  NcExpr replacement;
};

namespace detail {

inline bool apply_word_rule_once(const WordRewriteRule& rule, NcExpr& e, RewriteStats& stats) {
  if (rule.pattern.empty()) return false;
  NcExpr out;
  bool fired = false;
  for (const auto& [w, c] : e.terms()) {
    size_t hit = w.size() + 1;
    if (w.size() >= rule.pattern.size())
      for (size_t i = 0; i + rule.pattern.size() <= w.size(); ++i)
        if (std::equal(rule.pattern.begin(), rule.pattern.end(), w.begin() + i)) {
          hit = i;
          break;
        }
    if (hit > w.size()) {
      out.add_term(w, c);
      continue;
    }
    fired = true;
    ++stats.firings;
    ++stats.by_rule[rule.name];
    NcExpr prefix = NcExpr::word(Word(w.begin(), w.begin() + hit));
    NcExpr suffix = NcExpr::word(Word(w.begin() + hit + rule.pattern.size(), w.end()));
    out += c * (prefix * rule.replacement * suffix);
  }
  if (fired) e = std::move(out);
  return fired;
}

}  // namespace detail

// Word-level reduction to fixpoint. Terminates because every replacement word
// is strictly below the pattern in the graded-lex monomial order.
inline NcExpr word_rewrite_fixpoint(NcExpr e, const std::vector<WordRewriteRule>& rules,
                                    long long max_iter = kDefaultMaxFirings,
                                    RewriteStats* stats_out = nullptr) {
  RewriteStats stats;
  bool sweep_fired = true;
  while (sweep_fired) {
    sweep_fired = false;
    for (const auto& rule : rules) {
      while (detail::apply_word_rule_once(rule, e, stats)) {
        sweep_fired = true;
        if (stats.firings > max_iter) throw NonTerminationError(max_iter, std::move(e));
      }
    }
  }
  if (stats_out) *stats_out = std::move(stats);
  return e;
}

}  // namespace wnaforge
