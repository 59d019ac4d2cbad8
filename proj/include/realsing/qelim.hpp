#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "realsing/formula.hpp"

namespace realsing {

/// exists quantified: body, with the remaining variables free.
struct ExistentialQuery {
  std::vector<VariableId> quantified;
  DnfFormula body;
  std::vector<VariableId> free;
};

enum class Verdict { Unsat, Sat, Conditional, Unknown };

std::string to_string(Verdict v);

struct QueryResult {
  Verdict verdict = Verdict::Unknown;
  /// Condition over the free variables when the verdict is Conditional.
  DnfFormula condition;
  std::string reason;
  /// "internal" or "external".
  std::string backend = "internal";
};

/// Raised when a variable occurs with degree above two.
class NotEliminable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a query with free variables is exported.
class UnsupportedExport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Virtual substitution of one variable from a conjunction.
DnfFormula eliminate_var(const VariableId& v, const Guard& clause);

struct SolverConfig {
  /// Whitespace-separated command; the script path is appended.
  std::string command;
  std::chrono::milliseconds timeout{10000};
};

/// Solver configured through REALSING_SMT_SOLVER, if set and non-empty.
std::optional<SolverConfig> solver_from_environment();

enum class Backend { Internal, External };

struct DecideOptions {
  Backend backend = Backend::Internal;
  std::optional<SolverConfig> solver;
};

QueryResult decide(const ExistentialQuery& q, const DecideOptions& options = {});

/// QF_NRA script; throws UnsupportedExport if q has free variables.
std::string export_smtlib(const ExistentialQuery& q);

/// Runs the external solver on export_smtlib(q).
QueryResult run_external(const ExistentialQuery& q, const SolverConfig& config);

}  // namespace realsing
