// Virtual substitution for variables of degree at most two.
//
// Test points are -infinity, the roots of the weakly constrained atoms and
// root + epsilon for the strict ones. A root is (a + b*sqrt(delta))/c with
// b = 0 for rational roots; its guard states that it exists. If the clause
// has an equation in x, only its roots and the degenerate case are used.

#include <optional>

#include "realsing/qelim.hpp"

namespace realsing {

namespace {

struct TestPoint {
  enum class Kind { MinusInfinity, Finite };
  Kind kind = Kind::MinusInfinity;
  Poly a, b, c = Poly(1), delta;
  bool epsilon = false;
  Formula guard = Formula::truth();

  bool has_root() const { return !b.is_zero(); }
};

Formula atom(const Poly& p, Relation r) { return Formula::of(Atom(p, r)); }

Formula all_zero(const std::vector<Poly>& coeffs) {
  std::vector<Formula> fs;
  for (const auto& c : coeffs) fs.push_back(atom(c, Relation::Eq));
  return Formula::all(std::move(fs));
}

Formula some_nonzero(const std::vector<Poly>& coeffs) {
  std::vector<Formula> fs;
  for (const auto& c : coeffs) fs.push_back(atom(c, Relation::Ne));
  return Formula::any(std::move(fs));
}

/// Sign condition on a + b*sqrt(delta), with delta >= 0 assumed.
Formula root_sign(const Poly& a, const Poly& b, const Poly& delta, Relation r) {
  Poly norm = a * a - b * b * delta;
  switch (r) {
    case Relation::Eq:
      return Formula::all({atom(a * b, Relation::Le), atom(norm, Relation::Eq)});
    case Relation::Ne:
      return Formula::any({atom(a * b, Relation::Gt), atom(norm, Relation::Ne)});
    case Relation::Lt:
      return Formula::any({Formula::all({atom(a, Relation::Lt), atom(norm, Relation::Gt)}),
                           Formula::all({atom(b, Relation::Le),
                                         Formula::any({atom(a, Relation::Lt), atom(norm, Relation::Lt)})})});
    case Relation::Le:
      return Formula::any({Formula::all({atom(a, Relation::Le), atom(norm, Relation::Ge)}),
                           Formula::all({atom(b, Relation::Le), atom(norm, Relation::Le)})});
    case Relation::Gt:
      return root_sign(-a, -b, delta, Relation::Lt);
    case Relation::Ge:
      return root_sign(-a, -b, delta, Relation::Le);
  }
  return Formula::falsity();
}

/// g(point) rel 0 for a finite point without epsilon.
Formula at_point(const Poly& g, const VariableId& x, Relation r, const TestPoint& tp) {
  auto coeffs = g.coefficients(x);
  if (coeffs.size() <= 1) return atom(g, r);
  const unsigned d = static_cast<unsigned>(coeffs.size() - 1);
  // g(x) * c^d = A + B*sqrt(delta)
  Poly sum_a, sum_b;
  Poly pa(1), pb;  // (a + b*sqrt(delta))^i
  std::vector<Poly> cpow(d + 1, Poly(1));
  for (unsigned i = 1; i <= d; ++i) cpow[i] = cpow[i - 1] * tp.c;
  for (unsigned i = 0; i <= d; ++i) {
    if (!coeffs[i].is_zero()) {
      sum_a += coeffs[i] * pa * cpow[d - i];
      sum_b += coeffs[i] * pb * cpow[d - i];
    }
    Poly na = pa * tp.a + pb * tp.b * tp.delta;
    Poly nb = pa * tp.b + pb * tp.a;
    pa = std::move(na);
    pb = std::move(nb);
  }
  if (d % 2 == 1) {
    sum_a *= tp.c;
    sum_b *= tp.c;
  }
  if (sum_b.is_zero()) return atom(sum_a, r);
  return root_sign(sum_a, sum_b, tp.delta, r);
}

/// g(point + epsilon) < 0.
Formula negative_right_of(const Poly& g, const VariableId& x, const TestPoint& tp) {
  if (g.is_zero()) return Formula::falsity();
  if (!g.contains(x)) return atom(g, Relation::Lt);
  return Formula::any({at_point(g, x, Relation::Lt, tp),
                       Formula::all({at_point(g, x, Relation::Eq, tp),
                                     negative_right_of(partial_derivative(g, x), x, tp)})});
}

/// g(x) < 0 for all sufficiently negative x.
Formula negative_at_minus_infinity(const Poly& g, const VariableId& x) {
  auto coeffs = g.coefficients(x);
  if (coeffs.empty()) return Formula::falsity();
  if (coeffs.size() == 1) return atom(coeffs[0], Relation::Lt);
  const std::size_t d = coeffs.size() - 1;
  Poly top = coeffs[d];
  coeffs.pop_back();
  return Formula::any({atom(d % 2 == 0 ? top : -top, Relation::Lt),
                       Formula::all({atom(top, Relation::Eq),
                                     negative_at_minus_infinity(Poly::from_coefficients(x, coeffs), x)})});
}

Formula substituted(const Poly& g, const VariableId& x, Relation r, const TestPoint& tp) {
  if (!g.contains(x)) return atom(g, r);
  auto coeffs = g.coefficients(x);
  if (tp.kind == TestPoint::Kind::Finite && !tp.epsilon) return at_point(g, x, r, tp);

  auto negative = [&](const Poly& h) {
    return tp.kind == TestPoint::Kind::MinusInfinity ? negative_at_minus_infinity(h, x)
                                                     : negative_right_of(h, x, tp);
  };
  switch (r) {
    case Relation::Eq:
      return all_zero(coeffs);
    case Relation::Ne:
      return some_nonzero(coeffs);
    case Relation::Lt:
      return negative(g);
    case Relation::Le:
      return Formula::any({negative(g), all_zero(coeffs)});
    case Relation::Gt:
      return negative(-g);
    case Relation::Ge:
      return Formula::any({negative(-g), all_zero(coeffs)});
  }
  return Formula::falsity();
}

/// Roots of g in x (degree 1 or 2), each with its existence guard.
std::vector<TestPoint> roots(const Poly& g, const VariableId& x, bool epsilon) {
  auto cs = g.coefficients(x);
  std::vector<TestPoint> out;
  auto linear = [&](const Poly& c0, const Poly& c1, Formula guard) {
    TestPoint tp;
    tp.kind = TestPoint::Kind::Finite;
    tp.a = -c0;
    tp.c = c1;
    tp.epsilon = epsilon;
    tp.guard = std::move(guard);
    out.push_back(std::move(tp));
  };
  if (cs.size() == 2) {
    linear(cs[0], cs[1], atom(cs[1], Relation::Ne));
  } else if (cs.size() == 3) {
    linear(cs[0], cs[1], Formula::all({atom(cs[2], Relation::Eq), atom(cs[1], Relation::Ne)}));
    Poly delta = cs[1] * cs[1] - cs[2] * cs[0] * 4;
    for (long sign : {1L, -1L}) {
      TestPoint tp;
      tp.kind = TestPoint::Kind::Finite;
      tp.a = -cs[1];
      tp.b = Poly(sign);
      tp.c = cs[2] * 2;
      tp.delta = delta;
      tp.epsilon = epsilon;
      tp.guard = Formula::all({atom(cs[2], Relation::Ne), atom(delta, Relation::Ge)});
      out.push_back(std::move(tp));
    }
  }
  return out;
}

Formula conjunction(const std::vector<Atom>& atoms) {
  std::vector<Formula> fs;
  for (const auto& a : atoms) fs.push_back(Formula::of(a));
  return Formula::all(std::move(fs));
}

Formula eliminate(const VariableId& x, const std::vector<Atom>& with_x);

Formula at_points(const VariableId& x, const std::vector<Atom>& atoms, const std::vector<TestPoint>& points,
                  const std::optional<std::size_t>& skip) {
  std::vector<Formula> branches;
  for (const auto& tp : points) {
    std::vector<Formula> conj{tp.guard};
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (!skip || *skip != i) conj.push_back(substituted(atoms[i].poly(), x, atoms[i].relation(), tp));
    branches.push_back(Formula::all(std::move(conj)));
  }
  return Formula::any(std::move(branches));
}

Formula eliminate(const VariableId& x, const std::vector<Atom>& with_x) {
  if (with_x.empty()) return Formula::truth();
  std::optional<std::size_t> eq;
  for (std::size_t i = 0; i < with_x.size(); ++i) {
    if (with_x[i].relation() != Relation::Eq) continue;
    if (!eq || with_x[i].poly().degree(x) < with_x[*eq].poly().degree(x)) eq = i;
  }
  if (eq) {
    const Poly& e = with_x[*eq].poly();
    Formula roots_branch = at_points(x, with_x, roots(e, x, false), eq);
    std::vector<Atom> rest;
    for (std::size_t i = 0; i < with_x.size(); ++i)
      if (i != *eq) rest.push_back(with_x[i]);
    Formula degenerate = Formula::all({all_zero(e.coefficients(x)), eliminate(x, rest)});
    return Formula::any({std::move(roots_branch), std::move(degenerate)});
  }
  std::vector<TestPoint> points{TestPoint{}};
  for (const auto& a : with_x) {
    bool strict = (mask_of(a.relation()) & kZero) == 0;
    for (auto& tp : roots(a.poly(), x, strict)) points.push_back(std::move(tp));
  }
  return at_points(x, with_x, points, std::nullopt);
}

}  // namespace

DnfFormula eliminate_var(const VariableId& v, const Guard& clause) {
  if (clause.is_false()) return DnfFormula::falsity();
  std::vector<Atom> with_x, without_x;
  for (const auto& a : clause.atoms()) {
    unsigned d = a.poly().degree(v);
    if (d > 2)
      throw NotEliminable(v.to_string() + " has degree " + std::to_string(d) + " in " + a.to_string());
    (d == 0 ? without_x : with_x).push_back(a);
  }
  return to_dnf(Formula::all({conjunction(without_x), eliminate(v, with_x)}));
}

}  // namespace realsing
