#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "realsing/formula.hpp"
#include "realsing/poly.hpp"

namespace realsing {

using PolyMatrix = std::vector<std::vector<Poly>>;

struct EliminationTask {
  PolyMatrix matrix;
  /// Names of the N unknowns, one per column.
  std::vector<std::string> unknowns;
  /// Column indices of the y-unknowns.
  std::vector<std::size_t> y;
};

/// Stack element (guard, matrix, pivot index, column permutation).
struct StackCase {
  Guard guard;
  PolyMatrix matrix;
  /// Zero-based: rows and columns before p hold pivots.
  std::size_t p = 0;
  /// perm[j] is the original column currently at position j.
  std::vector<std::size_t> perm;
};

/// x_n = (sum_k coefficients[k] * r_{k+1}) / denominator.
struct LinearForm {
  std::vector<Poly> coefficients;
  Poly denominator = Poly(1);

  bool is_zero() const;
  Rational evaluate(const Point& params, const std::vector<Rational>& r) const;
};

struct ParamSolution {
  std::vector<std::size_t> perm;
  /// Number of dependent unknowns L; they sit at perm[0..L).
  std::size_t dependent_count = 0;
  /// Original column of r_{k+1}, ascending.
  std::vector<std::size_t> free_columns;
  /// Indexed by original column.
  std::vector<LinearForm> values;

  std::size_t free_count() const { return free_columns.size(); }
  bool is_free(std::size_t column) const;
  /// "b = -(t + u*u')/u'*r1" style equations, one per unknown in original order.
  std::vector<std::string> equations(const std::vector<std::string>& names) const;
};

struct EliminationCase {
  Guard guard;
  ParamSolution solution;
  std::size_t intersection_dim = 0;
};

struct GaussOptions {
  /// Checks that the termination measure decreases on every push.
  bool check_termination = false;
};

struct EliminationOutput {
  std::vector<EliminationCase> cases;
  std::size_t pushes = 0;
  std::size_t measure_violations = 0;
  std::vector<std::string> violation_details;
};

EliminationOutput parametric_gauss(const EliminationTask& task, const GaussOptions& options = {});

/// Back-substitution of an echelon form whose pivots are nonzero under its guard.
ParamSolution construct_solution(const StackCase& echelon);

/// Dimension of the solution space intersected with {y = 0}. Throws
/// std::logic_error if a dependent y-unknown depends on a free unknown
/// outside y, which the pivot deferral rules out.
std::size_t intersection_dim(const ParamSolution& h, const std::vector<std::size_t>& y);

}  // namespace realsing
