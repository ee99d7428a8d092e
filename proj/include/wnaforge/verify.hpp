#pragma once

#include <list>
#include <vector>

#include "wnaforge/flow_system.hpp"

namespace wnaforge {

struct CheckConfig {
  NcExpr candidate;
  NcExpr target;
  FlowSystem system;
  std::vector<NcExpr> constraints;  // expressions asserted to vanish
  int closure_order = 3;            // how often constraints follow the flows
  long long max_iter = kDefaultMaxFirings;
  int membership_margin = 1;  // extra word length for the linear fallback
};

struct CheckReport {
  bool verified = false;
  bool used_constraints = false;
  bool used_membership = false;
  NcExpr residual;  // state after the last reduction stage
  long long firings = 0;
};

namespace detail {

inline NcExpr flow_reduce(NcExpr e, const FlowSystem& sys, LqrsTable& table, long long max_iter,
                          long long* firings) {
  RewriteStats stats;
  e = rewrite_fixpoint(std::move(e), sys.substitution_rules(), DerivationRules::standard(),
                       max_iter, &stats);
  if (firings) *firings += stats.firings;
  return table.expand_grades(e);
}

// Constraints and their flow derivatives, reduced and deduplicated.
inline std::vector<NcExpr> constraint_closure(const CheckConfig& cfg, LqrsTable& table,
                                              long long* firings) {
  std::vector<NcExpr> closed;
  std::vector<NcExpr> frontier;
  auto push = [&](NcExpr g) {
    if (g.is_zero()) return;
    for (const NcExpr& seen : closed)
      if (seen == g) return;
    closed.push_back(g);
    frontier.push_back(std::move(g));
  };
  for (const NcExpr& g : cfg.constraints)
    push(flow_reduce(g, cfg.system, table, cfg.max_iter, firings));
  std::set<VarIndex> dirs = cfg.system.vars();
  for (int pass = 0; pass < cfg.closure_order; ++pass) {
    std::vector<NcExpr> batch = std::move(frontier);
    frontier.clear();
    for (const NcExpr& g : batch)
      for (const VarIndex& u : dirs)
        push(flow_reduce(apply_derivative(u, g), cfg.system, table, cfg.max_iter, firings));
  }
  return closed;
}

// Each constraint, solved for its highest word.
inline std::vector<WordRewriteRule> orient_constraints(const std::vector<NcExpr>& constraints) {
  std::vector<WordRewriteRule> rules;
  for (size_t i = 0; i < constraints.size(); ++i) {
    const NcExpr& g = constraints[i];
    auto lead = g.terms().rbegin();
    if (lead->first.empty())
      throw ConfigError("constraint reduces to a nonzero scalar");
    NcExpr rest;
    for (const auto& [w, c] : g.terms())
      if (w != lead->first) rest.add_term(w, c);
    rules.push_back(WordRewriteRule{"constraint " + std::to_string(i), lead->first,
                                    Rational(-1) / lead->second * rest});
  }
  return rules;
}

// Exact membership of r in the linear span of { u g v } with the total word
// length capped. Pivots are kept in echelon form keyed by leading word.
inline bool in_two_sided_span(const NcExpr& r, const std::vector<NcExpr>& generators,
                              size_t max_len) {
  if (r.is_zero()) return true;

  // Alphabet: every atom seen in r or the generators.
  std::set<Atom> alphabet;
  auto collect = [&](const NcExpr& e) {
    for (const auto& [w, c] : e.terms())
      for (const Atom& a : w) alphabet.insert(a);
  };
  collect(r);
  for (const NcExpr& g : generators) collect(g);

  std::map<Word, NcExpr, WordLess> pivots;
  auto reduce = [&](NcExpr e) {
    for (;;) {
      if (e.is_zero()) return e;
      auto lead = e.terms().rbegin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) return e;
      e -= lead->second * it->second;
    }
  };
  auto insert = [&](NcExpr e) {
    e = reduce(std::move(e));
    if (e.is_zero()) return;
    auto lead = e.terms().rbegin();
    Rational inv = Rational(1) / lead->second;
    pivots.emplace(lead->first, inv * e);
  };

  auto expr_len = [](const NcExpr& e) {
    size_t len = 0;
    for (const auto& [w, c] : e.terms()) len = std::max(len, w.size());
    return len;
  };

  // Words only ever pad a generator, so the enumeration stops at the cap
  // minus the shortest generator.
  size_t min_glen = max_len;
  for (const NcExpr& g : generators)
    if (!g.is_zero()) min_glen = std::min(min_glen, expr_len(g));
  size_t pad_len = max_len > min_glen ? max_len - min_glen : 0;

  std::vector<Word> words = {Word{}};
  size_t level_begin = 0;
  for (size_t len = 1; len <= pad_len; ++len) {
    size_t level_end = words.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (const Atom& a : alphabet) {
        Word w = words[i];
        w.push_back(a);
        words.push_back(std::move(w));
      }
    level_begin = level_end;
  }

  for (const NcExpr& g : generators) {
    size_t glen = expr_len(g);
    for (const Word& u : words) {
      if (u.size() + glen > max_len) continue;
      NcExpr ug = NcExpr::word(u) * g;
      for (const Word& v : words) {
        if (u.size() + glen + v.size() > max_len) continue;
        insert(ug * NcExpr::word(v));
      }
    }
  }
  return reduce(r).is_zero();
}

}  // namespace detail

// Decides candidate == target modulo the flow system and the two-sided ideal
// generated by the constraints. Stages: flow substitution, then rewriting by
// constraints oriented at their highest word, then exact linear membership in
// the span of bounded products. Each stage runs only if the previous one
// left something.
inline CheckReport verify_identity(const CheckConfig& cfg, LqrsTable& table) {
  CheckReport report;
  NcExpr r = detail::flow_reduce(cfg.candidate - cfg.target, cfg.system, table, cfg.max_iter,
                                 &report.firings);
  if (r.is_zero()) {
    report.verified = true;
    return report;
  }

  if (cfg.constraints.empty()) {
    report.residual = std::move(r);
    return report;
  }
  report.used_constraints = true;
  std::vector<NcExpr> closure = detail::constraint_closure(cfg, table, &report.firings);
  RewriteStats stats;
  r = word_rewrite_fixpoint(std::move(r), detail::orient_constraints(closure), cfg.max_iter,
                            &stats);
  report.firings += stats.firings;
  if (r.is_zero()) {
    report.verified = true;
    return report;
  }

  report.used_membership = true;
  size_t rlen = 0;
  for (const auto& [w, c] : r.terms()) rlen = std::max(rlen, w.size());
  report.verified =
      detail::in_two_sided_span(r, closure, rlen + static_cast<size_t>(cfg.membership_margin));
  report.residual = std::move(r);
  return report;
}

}  // namespace wnaforge
