#include "realsing/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace realsing {

VariableId DifferentialSystem::function(unsigned alpha, unsigned k) const {
  if (alpha >= functions.size()) throw std::out_of_range("function index out of range");
  return VariableId::dependent(functions[alpha], alpha, k);
}

VariableId DifferentialSystem::parameter(unsigned i) const {
  if (i >= parameters.size()) throw std::out_of_range("parameter index out of range");
  return VariableId::parameter(parameters[i], i);
}

std::vector<VariableId> DifferentialSystem::jet_variables() const {
  std::vector<VariableId> vars{VariableId::time()};
  for (unsigned k = 0; k <= order; ++k)
    for (unsigned a = 0; a < functions.size(); ++a) vars.push_back(function(a, k));
  return vars;
}

std::vector<VariableId> DifferentialSystem::parameter_variables() const {
  std::vector<VariableId> vars;
  for (unsigned i = 0; i < parameters.size(); ++i) vars.push_back(parameter(i));
  return vars;
}

void DifferentialSystem::validate() const {
  if (functions.empty()) throw std::invalid_argument("no unknown functions declared");
  if (equations.empty()) throw std::invalid_argument("system has no equations");
  auto check = [&](const Poly& p) {
    for (const auto& x : p.variables()) {
      if (x.is_dependent() && (x.index() >= functions.size() || x.order() > order))
        throw std::invalid_argument("variable " + x.to_string() + " exceeds the declared order " +
                                    std::to_string(order));
      if (x.is_parameter() && x.index() >= parameters.size())
        throw std::invalid_argument("undeclared parameter " + x.to_string());
    }
  };
  for (const auto& p : equations) check(p);
  for (const auto& a : inequalities) check(a.poly());
}

Guard DifferentialSystem::as_guard() const {
  Guard g;
  for (const auto& p : equations) g.add(p, kZero);
  for (const auto& a : inequalities) g.add(a);
  return g;
}

unsigned jet_order(const Poly& p) {
  unsigned k = 0;
  for (const auto& x : p.variables())
    if (x.is_dependent()) k = std::max(k, x.order());
  return k;
}

Poly contact_trans(const Poly& p, unsigned ell) {
  if (jet_order(p) > ell)
    throw std::invalid_argument("polynomial of order " + std::to_string(jet_order(p)) +
                                " exceeds contact order " + std::to_string(ell));
  Poly r = partial_derivative(p, VariableId::time());
  for (const auto& x : p.variables())
    if (x.is_dependent() && x.order() < ell) r += Poly::variable(x.derivative()) * partial_derivative(p, x);
  return r;
}

Poly formal_derivative(const Poly& p) { return contact_trans(p, jet_order(p) + 1); }

namespace {

struct Rule {
  VariableId leader;
  Poly value;
};

std::vector<Rule> reduction_rules(const std::vector<Poly>& equations) {
  std::vector<Rule> rules;
  for (const auto& e : equations) {
    auto vars = e.variables();
    // Only jet variables lead; parameters are never solved for.
    std::optional<VariableId> leader;
    for (const auto& x : vars)
      if (x.is_jet() && !x.is_time() && (!leader || *leader < x)) leader = x;
    if (!leader || e.degree(*leader) != 1) continue;
    auto cs = e.coefficients(*leader);
    if (!cs[1].is_constant()) continue;
    if (std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.leader == *leader; })) continue;
    rules.push_back({*leader, cs[0] * (Rational(-1) / cs[1].constant_value())});
  }
  return rules;
}

Poly apply_rules(Poly p, const std::vector<Rule>& rules) {
  // Each rule replaces its leader by smaller variables, so this terminates
  // unless two rules feed each other; the pass cap guards against that.
  for (std::size_t pass = 0; pass <= rules.size() + 1; ++pass) {
    std::map<VariableId, Poly> binding;
    for (const auto& r : rules)
      if (p.contains(r.leader)) binding.emplace(r.leader, r.value);
    if (binding.empty()) break;
    p = substitute(p, binding);
  }
  return p;
}

void add_unique(std::vector<Poly>& eqs, const Poly& p) {
  Poly c = canonicalize(p).primitive;
  if (c.is_zero()) return;
  if (std::find(eqs.begin(), eqs.end(), c) == eqs.end()) eqs.push_back(c);
}

}  // namespace

Poly reduce_modulo(const Poly& p, const std::vector<Poly>& equations) {
  return apply_rules(p, reduction_rules(equations));
}

DifferentialSystem prolong(const DifferentialSystem& sys, unsigned target, bool reduce) {
  if (target < sys.order)
    throw std::invalid_argument("prolongation target " + std::to_string(target) + " is below the system order " +
                                std::to_string(sys.order));
  DifferentialSystem out = sys;
  out.order = target;
  if (target == sys.order) return out;
  out.equations.clear();
  for (const auto& p : sys.equations) add_unique(out.equations, p);
  std::vector<Poly> level = out.equations;
  for (unsigned j = 1; j <= target - sys.order; ++j) {
    std::vector<Poly> next;
    for (const auto& p : level) {
      Poly d = formal_derivative(p);
      if (reduce) d = reduce_modulo(d, out.equations);
      d = canonicalize(d).primitive;
      next.push_back(d);
      if (!d.is_zero()) add_unique(out.equations, d);
    }
    level = std::move(next);
  }
  return out;
}

VessiotMatrix vessiot_matrix(const DifferentialSystem& sys, RowSelection rows, bool reduce) {
  const std::size_t m = sys.m();
  std::vector<Rule> rules;
  if (reduce) rules = reduction_rules(sys.equations);
  VessiotMatrix out;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const Poly& p = sys.equations[i];
    if (rows == RowSelection::TopOrder && jet_order(p) != sys.order) continue;
    std::vector<Poly> row;
    for (unsigned a = 0; a < m; ++a) row.push_back(partial_derivative(p, sys.function(a, sys.order)));
    row.push_back(contact_trans(p, sys.order));
    if (reduce)
      for (auto& e : row) e = apply_rules(e, rules);
    mpz_class num = 0, den = 1;
    for (const auto& e : row)
      for (const auto& [mono, c] : e.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      }
    if (num != 0) {
      Rational scale(den, num);
      scale.canonicalize();
      for (auto& e : row) e *= scale;
    }
    out.entries.push_back(std::move(row));
    out.source.push_back(i);
  }
  return out;
}

}  // namespace realsing
