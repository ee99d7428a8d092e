#pragma once

#include <set>
#include <vector>

#include "wnaforge/flow_system.hpp"

namespace wnaforge {

enum class CommuteStatus { commute, conditional, fail };

inline const char* to_string(CommuteStatus s) {
  switch (s) {
    case CommuteStatus::commute: return "commute";
    case CommuteStatus::conditional: return "conditional";
    default: return "fail";
  }
}

struct CommuteReport {
  CommuteStatus status = CommuteStatus::fail;
  std::vector<VarIndex> aux;  // extra flow directions the commutator needs
  NcExpr residual;            // nonzero only on failure
  long long firings = 0;
};

namespace detail {

// Cross-derivative of the two right-hand sides, with every derivative of the
// dynamic symbol along an allowed direction pushed back through the system.
// Directions outside the system stay as free decorations and must cancel on
// their own.
inline NcExpr commutator_residual(const FlowSystem& sys, const Symbol& dyn, const VarIndex& v,
                                  const VarIndex& w, const std::set<VarIndex>& allowed,
                                  LqrsTable& table, long long max_iter, RewriteStats* stats) {
  const NcExpr* fv = sys.lookup(dyn, v);
  const NcExpr* fw = sys.lookup(dyn, w);
  if (!fv || !fw) throw ConfigError("flow pair not defined in the system");
  NcExpr r = apply_derivative(v, *fw) - apply_derivative(w, *fv);
  r = rewrite_fixpoint(std::move(r), sys.substitution_rules(allowed),
                       DerivationRules::standard(), max_iter, stats);
  return table.expand_grades(r);
}

}  // namespace detail

// Decides whether the v- and w-flows of sys commute on the given symbol, and
// if they only commute conditionally, greedily shrinks the set of auxiliary
// flow directions to an inclusion-minimal one.
inline CommuteReport check_commute(const FlowSystem& sys, const VarIndex& v, const VarIndex& w,
                                   LqrsTable& table, const Symbol& dyn = phi_symbol(),
                                   long long max_iter = kDefaultMaxFirings) {
  CommuteReport report;
  std::set<VarIndex> allowed = sys.vars();
  allowed.insert(v);
  allowed.insert(w);

  RewriteStats stats;
  NcExpr r = detail::commutator_residual(sys, dyn, v, w, allowed, table, max_iter, &stats);
  report.firings = stats.firings;
  if (!r.is_zero()) {
    report.status = CommuteStatus::fail;
    report.residual = std::move(r);
    return report;
  }

  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (const VarIndex& u : std::set<VarIndex>(allowed)) {
      if (u == v || u == w) continue;
      std::set<VarIndex> trial = allowed;
      trial.erase(u);
      RewriteStats trial_stats;
      NcExpr tr = detail::commutator_residual(sys, dyn, v, w, trial, table, max_iter,
                                              &trial_stats);
      report.firings += trial_stats.firings;
      if (tr.is_zero()) {
        allowed = std::move(trial);
        shrunk = true;
      }
    }
  }

  for (const VarIndex& u : allowed)
    if (!(u == v) && !(u == w)) report.aux.push_back(u);
  report.status = report.aux.empty() ? CommuteStatus::commute : CommuteStatus::conditional;
  return report;
}

}  // namespace wnaforge
