#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

#include "realsing/qelim.hpp"

namespace realsing {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unsat:
      return "unsat";
    case Verdict::Sat:
      return "sat";
    case Verdict::Conditional:
      return "conditional";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<SolverConfig> solver_from_environment() {
  const char* cmd = std::getenv("REALSING_SMT_SOLVER");
  if (!cmd || std::string(cmd).find_first_not_of(" \t") == std::string::npos) return std::nullopt;
  return SolverConfig{cmd};
}

namespace {

struct Eliminator {
  std::set<VariableId> free;
  bool stop_at_true = false;
  bool blocked = false;
  std::string blocked_reason;

  bool bound(const VariableId& v) const { return !free.contains(v); }

  DnfFormula run(const Guard& c) {
    if (c.is_false() || is_false(c) == Refutation::DerivablyFalse) return DnfFormula::falsity();
    std::optional<std::tuple<unsigned, VariableId>> best;
    for (const auto& v : c.variables()) {
      if (!bound(v)) continue;
      unsigned deg = 0;
      for (const auto& [p, m] : c.masks()) deg = std::max(deg, p.degree(v));
      std::tuple<unsigned, VariableId> key{deg, v};
      if (!best || key < *best) best = key;
    }
    if (!best) return DnfFormula({c});
    const auto& [deg, v] = *best;
    if (deg > 2) {
      blocked = true;
      if (blocked_reason.empty())
        blocked_reason = "every remaining variable has degree above 2 in " + c.to_string();
      return DnfFormula::falsity();
    }
    DnfFormula acc;
    const DnfFormula eliminated = eliminate_var(v, c);
    for (const auto& next : eliminated.clauses()) {
      acc = dnf_or(acc, run(next));
      if (stop_at_true && acc.is_true()) break;
    }
    return acc;
  }
};

}  // namespace

QueryResult decide(const ExistentialQuery& q, const DecideOptions& options) {
  if (options.backend == Backend::External && q.free.empty()) {
    if (!options.solver) return {Verdict::Unknown, {}, "no external solver configured", "external"};
    return run_external(q, *options.solver);
  }

  Eliminator e;
  e.free.insert(q.free.begin(), q.free.end());
  e.stop_at_true = q.free.empty();
  DnfFormula residual;
  const DnfFormula body = simplify(q.body);
  for (const auto& clause : body.clauses()) {
    residual = dnf_or(residual, e.run(clause));
    if (e.stop_at_true && residual.is_true()) break;
  }
  residual = simplify(residual);

  if (residual.is_true()) return {Verdict::Sat, DnfFormula::truth(), "", "internal"};
  if (e.blocked) {
    if (q.free.empty() && options.solver) {
      QueryResult r = run_external(q, *options.solver);
      if (r.verdict == Verdict::Unknown) r.reason = e.blocked_reason + "; " + r.reason;
      return r;
    }
    return {Verdict::Unknown, {}, e.blocked_reason, "internal"};
  }
  if (residual.is_false()) return {Verdict::Unsat, residual, "", "internal"};
  return {Verdict::Conditional, residual, "", "internal"};
}

}  // namespace realsing
