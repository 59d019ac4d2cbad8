#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realsing/jet.hpp"
#include "realsing/pgauss.hpp"
#include "realsing/qelim.hpp"

namespace realsing {

/// Degenerate marks a zero-dimensional Vessiot space.
enum class SingularityClass { Regular, RegularSingular, IrregularSingular, Degenerate };

/// "regular", "regular-singular", "irregular-singular" or "degenerate".
std::string to_string(SingularityClass c);
std::optional<SingularityClass> singularity_class_from(const std::string& s);

struct Verification {
  bool verified = true;
  std::string reason;

  friend bool operator==(const Verification&, const Verification&) = default;
};

struct CaseReport {
  DnfFormula guard;
  ParamSolution solution;
  /// Unknown names in column order: b (or b_<name>) per function, then a.
  std::vector<std::string> unknowns;
  SingularityClass cls = SingularityClass::Regular;
  std::size_t vessiot_dim = 0;
  std::optional<DnfFormula> parameter_condition;
  Verification verification;
};

/// Classification from the solution shape; a is column m. Throws
/// std::logic_error if a is dependent with a nonzero value.
SingularityClass classify(const ParamSolution& h, std::size_t m);

struct SingularOptions {
  RowSelection rows = RowSelection::TopOrder;
  bool reduce = true;
  DecideOptions decide;
  bool check_termination = false;
};

struct SingularAnalysis {
  std::vector<CaseReport> cases;
  std::vector<std::string> warnings;
  std::size_t measure_violations = 0;
  /// Cases removed because guard and system are jointly unsatisfiable.
  std::size_t dropped = 0;
};

SingularAnalysis analyze(const DifferentialSystem& sys, const SingularOptions& options = {});

inline std::vector<CaseReport> real_singularities(const DifferentialSystem& sys,
                                                  const SingularOptions& options = {}) {
  return analyze(sys, options).cases;
}

/// Unknown names used for the Vessiot system of sys.
std::vector<std::string> vessiot_unknowns(const DifferentialSystem& sys);

/// Rank test at a rational point of the system. Throws std::invalid_argument
/// if the point misses a variable or does not satisfy the system.
SingularityClass rank_classify_at_point(const DifferentialSystem& sys, const Point& point);

}  // namespace realsing
