#include <algorithm>
#include <stdexcept>

#include "realsing/poly.hpp"

namespace realsing {
namespace {

std::optional<VariableId> main_variable(const Poly& a, const Poly& b) {
  std::optional<VariableId> best;
  for (const Poly* p : {&a, &b})
    for (const auto& x : p->variables())
      if (!best || *best < x) best = x;
  return best;
}

Poly exact_quotient(const Poly& p, const Poly& d) {
  auto q = divide_exact(p, d);
  if (!q) throw std::logic_error("expected exact division of " + p.to_string() + " by " + d.to_string());
  return *q;
}

// Pseudo-remainder of a by b, both viewed as univariate in x.
Poly pseudo_remainder(Poly a, const Poly& b, const VariableId& x) {
  unsigned db = b.degree(x);
  auto bc = b.coefficients(x);
  const Poly& lb = bc.back();
  while (!a.is_zero() && a.degree(x) >= db) {
    unsigned da = a.degree(x);
    Poly la = a.coefficients(x).back();
    a = lb * a - la * Poly(Monomial(x, da - db), Rational(1)) * b;
  }
  return a;
}

Poly content_in(const Poly& p, const VariableId& x) {
  Poly g;
  for (const auto& c : p.coefficients(x)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, const VariableId& x) {
  if (p.is_zero()) return p;
  return exact_quotient(p, content_in(p, x));
}

void merge_factor(std::vector<std::pair<Poly, unsigned>>& out, const Poly& f, unsigned e) {
  if (f.is_constant()) return;
  for (auto& [g, k] : out)
    if (g == f) {
      k += e;
      return;
    }
  out.emplace_back(f, e);
}

void sort_factors(std::vector<std::pair<Poly, unsigned>>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
    if (auto c = a.first <=> b.first; c != 0) return c < 0;
    return a.second < b.second;
  });
}

// Yun's algorithm on a polynomial primitive in x; appends canonical factors.
void yun(const Poly& f, const VariableId& x, std::vector<std::pair<Poly, unsigned>>& out) {
  Poly df = partial_derivative(f, x);
  Poly a = gcd(f, df);
  Poly b = exact_quotient(f, a);
  Poly c = exact_quotient(df, a);
  Poly d = c - partial_derivative(b, x);
  for (unsigned i = 1; !b.is_constant(); ++i) {
    Poly ai = gcd(b, d);
    b = exact_quotient(b, ai);
    c = exact_quotient(d, ai);
    d = c - partial_derivative(b, x);
    merge_factor(out, canonicalize(ai).primitive, i);
  }
}

void square_free_rec(const Poly& p, std::vector<std::pair<Poly, unsigned>>& out) {
  if (p.is_constant()) return;
  VariableId x = *main_variable(p, Poly());
  Poly cont = content_in(p, x);
  square_free_rec(cont, out);
  yun(canonicalize(exact_quotient(p, cont)).primitive, x, out);
}

// Splits a univariate quadratic with rational roots into linear factors.
std::vector<Poly> split_quadratic(const Poly& f) {
  auto vars = f.variables();
  if (vars.size() != 1 || f.degree(vars[0]) != 2) return {f};
  const VariableId& x = vars[0];
  auto c = f.coefficients(x);
  Rational a = c[2].constant_value(), b = c[1].is_zero() ? Rational(0) : c[1].constant_value(),
           k = c[0].is_zero() ? Rational(0) : c[0].constant_value();
  Rational disc = b * b - 4 * a * k;
  if (disc < 0) return {f};
  mpz_class n = disc.get_num(), d = disc.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return {f};
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational root(rn, rd);
  root.canonicalize();
  Poly X = Poly::variable(x);
  Poly f1 = canonicalize(X * (2 * a) + Poly(b - root)).primitive;
  Poly f2 = canonicalize(X * (2 * a) + Poly(b + root)).primitive;
  return {f1, f2};
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return canonicalize(b).primitive;
  if (b.is_zero()) return canonicalize(a).primitive;
  if (a.is_constant() || b.is_constant()) return Poly(1);
  VariableId x = *main_variable(a, b);
  if (!a.contains(x)) return gcd(a, content_in(b, x));
  if (!b.contains(x)) return gcd(content_in(a, x), b);
  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly g = gcd(ca, cb);
  Poly p = exact_quotient(a, ca), q = exact_quotient(b, cb);
  if (p.degree(x) < q.degree(x)) std::swap(p, q);
  while (!q.is_zero()) {
    Poly r = pseudo_remainder(p, q, x);
    p = std::move(q);
    q = r.is_zero() ? r : canonicalize(primitive_in(r, x)).primitive;
    if (!q.is_zero() && !q.contains(x)) {
      // Coprime in x: the primitive parts share nothing.
      p = Poly(1);
      break;
    }
  }
  return canonicalize(g * primitive_in(p, x)).primitive;
}

Poly Factorization::expand() const {
  Poly r(content);
  for (const auto& [f, e] : factors) r *= f.pow(e);
  return r;
}

Factorization square_free(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  Factorization out;
  square_free_rec(p, out.factors);
  sort_factors(out.factors);
  Poly prod(1);
  for (const auto& [f, e] : out.factors) prod *= f.pow(e);
  out.content = p.leading_coefficient() / prod.leading_coefficient();
  return out;
}

Factorization factor_basic(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  Factorization out;
  // Monomial content first.
  Monomial mc = p.terms().begin()->first;
  for (const auto& [m, c] : p.terms()) mc = Monomial::gcd(mc, m);
  Poly rest = p;
  if (!mc.is_one()) {
    rest = exact_quotient(p, Poly(mc, Rational(1)));
    for (const auto& [x, e] : mc.factors()) merge_factor(out.factors, Poly::variable(x), e);
  }
  for (const auto& [f, e] : square_free(rest).factors)
    for (const auto& g : split_quadratic(f)) merge_factor(out.factors, g, e);
  sort_factors(out.factors);
  Poly prod(1);
  for (const auto& [f, e] : out.factors) prod *= f.pow(e);
  out.content = p.leading_coefficient() / prod.leading_coefficient();
  return out;
}

}  // namespace realsing
