#include "realsing/singular.hpp"

#include <stdexcept>

namespace realsing {

std::string to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Regular:
      return "regular";
    case SingularityClass::RegularSingular:
      return "regular-singular";
    case SingularityClass::IrregularSingular:
      return "irregular-singular";
    case SingularityClass::Degenerate:
      return "degenerate";
  }
  return "degenerate";
}

std::optional<SingularityClass> singularity_class_from(const std::string& s) {
  for (auto c : {SingularityClass::Regular, SingularityClass::RegularSingular, SingularityClass::IrregularSingular,
                 SingularityClass::Degenerate})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

SingularityClass classify(const ParamSolution& h, std::size_t m) {
  if (m >= h.values.size()) throw std::invalid_argument("solution has no column for a");
  std::size_t nfree = h.free_count();
  if (nfree == 0) return SingularityClass::Degenerate;
  if (nfree >= 2) return SingularityClass::IrregularSingular;
  if (h.is_free(m)) return SingularityClass::Regular;
  if (!h.values[m].is_zero()) throw std::logic_error("a is dependent but not zero; pivot deferral violated");
  return SingularityClass::RegularSingular;
}

std::vector<std::string> vessiot_unknowns(const DifferentialSystem& sys) {
  std::vector<std::string> names;
  for (const auto& f : sys.functions) names.push_back(sys.m() == 1 ? "b" : "b_" + f);
  names.push_back("a");
  return names;
}

SingularAnalysis analyze(const DifferentialSystem& sys, const SingularOptions& options) {
  sys.validate();
  const std::size_t m = sys.m();
  EliminationTask task;
  task.matrix = vessiot_matrix(sys, options.rows, options.reduce).entries;
  task.unknowns = vessiot_unknowns(sys);
  task.y = {m};
  EliminationOutput elim = parametric_gauss(task, {options.check_termination});

  SingularAnalysis out;
  out.measure_violations = elim.measure_violations;
  const Guard sigma = sys.as_guard();
  ExistentialQuery query;
  query.quantified = sys.jet_variables();
  query.free = sys.parameter_variables();

  for (const auto& c : elim.cases) {
    Guard gamma = c.guard;
    gamma.conjoin(sigma);
    DnfFormula body = simplify(gamma);
    if (body.is_false()) {
      ++out.dropped;
      continue;
    }
    query.body = body;
    QueryResult r = decide(query, options.decide);
    if (r.verdict == Verdict::Unsat) {
      ++out.dropped;
      continue;
    }
    CaseReport report;
    report.guard = std::move(body);
    report.solution = c.solution;
    report.unknowns = task.unknowns;
    report.cls = classify(c.solution, m);
    report.vessiot_dim = c.solution.free_count();
    if (r.verdict == Verdict::Conditional) report.parameter_condition = r.condition;
    if (r.verdict == Verdict::Unknown) report.verification = {false, r.reason};
    if (report.cls == SingularityClass::Degenerate)
      out.warnings.push_back("zero-dimensional Vessiot space under " + report.guard.to_string() +
                             "; the input may not be well prepared");
    out.cases.push_back(std::move(report));
  }
  bool all_irregular = !out.cases.empty();
  for (const auto& c : out.cases) all_irregular = all_irregular && c.cls == SingularityClass::IrregularSingular;
  if (all_irregular)
    out.warnings.push_back("every case is irregular singular; the system looks underdetermined");
  return out;
}

namespace {

std::size_t rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

SingularityClass rank_classify_at_point(const DifferentialSystem& sys, const Point& point) {
  for (const auto& x : sys.jet_variables())
    if (!point.contains(x)) throw std::invalid_argument("point has no value for " + x.to_string());
  for (const auto& x : sys.parameter_variables())
    if (!point.contains(x)) throw std::invalid_argument("point has no value for " + x.to_string());
  for (const auto& e : sys.equations)
    if (evaluate(e, point) != 0) throw std::invalid_argument("point does not satisfy " + e.to_string() + " = 0");
  for (const auto& a : sys.inequalities)
    if (!a.holds(point)) throw std::invalid_argument("point does not satisfy " + a.to_string());

  const std::size_t m = sys.m();
  auto matrix = vessiot_matrix(sys, RowSelection::All, false);
  std::vector<std::vector<Rational>> aug, apart;
  for (const auto& row : matrix.entries) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(evaluate(e, point));
    aug.push_back(r);
    r.pop_back();
    apart.push_back(std::move(r));
  }
  std::size_t ra = rank(apart), rg = rank(aug);
  if (rg == m + 1) return SingularityClass::Degenerate;
  if (rg < m) return SingularityClass::IrregularSingular;
  return ra == m ? SingularityClass::Regular : SingularityClass::RegularSingular;
}

}  // namespace realsing
