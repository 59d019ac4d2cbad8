#pragma once

#include <string>
#include <vector>

#include "realsing/formula.hpp"
#include "realsing/poly.hpp"

namespace realsing {

/// Basic semialgebraic differential system: equations p = 0 and side
/// conditions q rel 0 over the jet space of order `order`.
struct DifferentialSystem {
  std::vector<std::string> functions;
  std::vector<std::string> parameters;
  unsigned order = 0;
  std::vector<Poly> equations;
  std::vector<Atom> inequalities;

  std::size_t m() const { return functions.size(); }
  VariableId function(unsigned alpha, unsigned k) const;
  VariableId parameter(unsigned i) const;

  /// t, then u_alpha^(k) for k <= order in variable order.
  std::vector<VariableId> jet_variables() const;
  std::vector<VariableId> parameter_variables() const;

  /// Throws std::invalid_argument on undeclared variables, order violations
  /// or an empty equation list.
  void validate() const;

  /// Conjunction of all equations and inequalities.
  Guard as_guard() const;

  friend bool operator==(const DifferentialSystem&, const DifferentialSystem&) = default;
};

/// Highest derivative order of a dependent variable in p; 0 if none.
unsigned jet_order(const Poly& p);

/// dp/dt + sum_{i=1..ell} sum_alpha u_alpha^(i) dp/du_alpha^(i-1).
Poly contact_trans(const Poly& p, unsigned ell);

/// Total derivative D p = contact_trans(p, jet_order(p) + 1).
Poly formal_derivative(const Poly& p);

/// Substitutes, until nothing changes, every equation that is linear in its
/// greatest jet variable with a constant coefficient into p.
Poly reduce_modulo(const Poly& p, const std::vector<Poly>& equations);

/// Adds D^j p for every original equation and j = 1..target-order.
DifferentialSystem prolong(const DifferentialSystem& sys, unsigned target, bool reduce);

enum class RowSelection { TopOrder, All };

struct VessiotMatrix {
  /// rows x (m+1): columns b_1..b_m, then a.
  std::vector<std::vector<Poly>> entries;
  /// Index into the system's equation list for each row.
  std::vector<std::size_t> source;

  std::size_t rows() const { return entries.size(); }
  std::size_t columns() const { return entries.empty() ? 0 : entries.front().size(); }
};

VessiotMatrix vessiot_matrix(const DifferentialSystem& sys, RowSelection rows = RowSelection::TopOrder,
                             bool reduce = true);

}  // namespace realsing
