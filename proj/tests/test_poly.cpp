#include <doctest.h>

#include "realsing/poly.hpp"
#include "support/printers.hpp"
#include "support/random.hpp"

using namespace realsing;
using realsing::testing::Rng;

namespace {

const VariableId T = VariableId::time();
const VariableId U = VariableId::dependent("u", 0, 0);
const VariableId U1 = VariableId::dependent("u", 0, 1);
const VariableId V = VariableId::dependent("v", 1, 0);
const VariableId W = VariableId::dependent("w", 2, 0);
const VariableId CHI = VariableId::parameter("chi", 0);

Poly var(const VariableId& x) { return Poly::variable(x); }

}  // namespace

TEST_CASE("variable order and printing") {
  CHECK(T < U);
  CHECK(U < V);
  CHECK(V < U1);
  CHECK(U1 < CHI);
  CHECK(U1.to_string() == "u'");
  CHECK(U.derivative(4).to_string() == "D(u,4)");
  CHECK(U.derivative(2) == VariableId::dependent("u", 0, 2));
}

TEST_CASE("arith examples") {
  Poly u = var(U);
  CHECK((u + 1) * (u - 1) == u * u - 1);
  CHECK(arith(u + 1, ArithOp::Mul, u - 1) == u.pow(2) - 1);
  CHECK(arith(u, ArithOp::Add, Poly()) == u);
  CHECK(arith(u, ArithOp::Neg, Poly()) == -u);
  Poly lhs = var(T) * var(V) * var(U1) - var(T) * var(U) + 1;
  CHECK(lhs.to_string() == "t*v*u' - t*u + 1");
  CHECK((u - u).is_zero());
}

TEST_CASE("substitute examples") {
  Poly sphere = var(U1).pow(2) + var(U).pow(2) + var(T).pow(2) - 1;
  CHECK(substitute(sphere, Point{{T, 0}, {U, 1}, {U1, 0}}).is_zero());
  CHECK(substitute(sphere, std::map<VariableId, Poly>{}) == sphere);
  Poly a = (var(T) * var(W) + var(V) - var(T)) * var(U1) - var(U);
  Poly at = substitute(a, Point{{V, 0}});
  CHECK(at == var(T) * (var(W) - 1) * var(U1) - var(U));
  // Simultaneous, not sequential.
  Poly swap = substitute(var(T) - var(U), std::map<VariableId, Poly>{{T, var(U)}, {U, var(T)}});
  CHECK(swap == var(U) - var(T));
}

TEST_CASE("partial derivative examples") {
  Poly sphere = var(U1).pow(2) + var(U).pow(2) + var(T).pow(2) - 1;
  CHECK(partial_derivative(sphere, U1) == var(U1) * 2);
  CHECK(partial_derivative(Poly(Rational(7)), U).is_zero());
  Poly gather = var(U1).pow(3) + var(CHI) * var(U) * var(U1) - var(T);
  CHECK(partial_derivative(gather, U1) == var(U1).pow(2) * 3 + var(CHI) * var(U));
}

TEST_CASE("canonicalize") {
  auto c = canonicalize(var(U1) * 2);
  CHECK(c.content == 2);
  CHECK(c.primitive == var(U1));
  auto d = canonicalize(var(T).pow(2) * -3 + 3);
  CHECK(d.content == -3);
  CHECK(d.primitive == var(T).pow(2) - 1);
  auto z = canonicalize(Poly());
  CHECK(z.content == 0);
  CHECK(z.primitive.is_zero());
  auto h = canonicalize(var(U) * Rational(2, 3) - Rational(4, 9));
  CHECK(h.primitive == var(U) * 3 - 2);
  CHECK(h.content * h.primitive == var(U) * Rational(2, 3) - Rational(4, 9));
}

TEST_CASE("gcd and exact division") {
  Poly t = var(T), u = var(U);
  CHECK(gcd(u * u - 1, u - 1) == u - 1);
  CHECK(gcd((t + u) * (t - u) * 4, (t + u).pow(2) * 6) == t + u);
  CHECK(gcd(t, u).is_constant());
  CHECK(gcd(Poly(), Poly()).is_zero());
  CHECK(divide_exact(u * u - 1, u + 1) == std::optional<Poly>(u - 1));
  CHECK(!divide_exact(u * u + 1, u + 1));
}

TEST_CASE("factor_basic examples") {
  Poly t = var(T), u = var(U), v = var(V);
  auto f = factor_basic(t * v);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::make_pair(t, 1U));
  CHECK(f.factors[1] == std::make_pair(v, 1U));

  auto g = factor_basic(u * u - 1);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].first == u - 1);
  CHECK(g.factors[1].first == u + 1);

  auto h = factor_basic(u * u + t * t - 1);
  REQUIRE(h.factors.size() == 1);
  CHECK(h.factors[0].first == u * u + t * t - 1);

  auto k = factor_basic((u * 2 - 1).pow(3) * t.pow(2) * -5);
  CHECK(k.expand() == (u * 2 - 1).pow(3) * t.pow(2) * -5);
  REQUIRE(k.factors.size() == 2);

  CHECK_THROWS(factor_basic(Poly()));
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(11);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 200; ++i) {
    Poly p = testing::random_poly(rng, vars, 3, 4);
    Poly q = testing::random_poly(rng, vars, 3, 4);
    Poly r = testing::random_poly(rng, vars, 2, 3);
    CHECK((p + q) * r == p * r + q * r);
    CHECK(p * q == q * p);
    CHECK((p + (-p)).is_zero());
  }
}

TEST_CASE("substitute commutes with multiplication") {
  Rng rng(12);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 100; ++i) {
    Poly p = testing::random_poly(rng, vars, 3, 4);
    Poly q = testing::random_poly(rng, vars, 3, 4);
    std::map<VariableId, Poly> b{{U, testing::random_poly(rng, {T, U1}, 2, 2)}, {T, Poly(rng.rational())}};
    CHECK(substitute(p * q, b) == substitute(p, b) * substitute(q, b));
  }
}

TEST_CASE("Leibniz rule") {
  Rng rng(13);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 100; ++i) {
    Poly p = testing::random_poly(rng, vars, 3, 4);
    Poly q = testing::random_poly(rng, vars, 3, 4);
    const VariableId& x = rng.pick(vars);
    CHECK(partial_derivative(p * q, x) == partial_derivative(p, x) * q + p * partial_derivative(q, x));
  }
}

TEST_CASE("canonicalize is idempotent") {
  Rng rng(14);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 100; ++i) {
    Poly p = testing::random_poly(rng, vars, 3, 4) * rng.rational();
    auto c = canonicalize(p);
    CHECK(c.content * c.primitive == p);
    if (p.is_zero()) continue;
    auto again = canonicalize(c.primitive);
    CHECK(again.content == 1);
    CHECK(again.primitive == c.primitive);
  }
}

TEST_CASE("factor_basic reproduces its input") {
  Rng rng(15);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 150; ++i) {
    Poly a = testing::random_poly(rng, vars, 2, 3);
    Poly b = testing::random_poly(rng, vars, 2, 3);
    Poly p = a * a * b * rng.rational();
    if (rng.coin()) p *= Poly::variable(rng.pick(vars));
    if (p.is_zero()) continue;
    auto f = factor_basic(p);
    CHECK(f.expand() == p);
    for (const auto& [g, e] : f.factors) {
      CHECK(!g.is_constant());
      CHECK(canonicalize(g).content == 1);
    }
    auto s = square_free(p);
    CHECK(s.expand() == p);
  }
}

TEST_CASE("gcd divides both arguments") {
  Rng rng(16);
  std::vector<VariableId> vars{T, U, U1};
  for (int i = 0; i < 150; ++i) {
    Poly c = testing::random_poly(rng, vars, 2, 3);
    Poly a = c * testing::random_poly(rng, vars, 2, 3);
    Poly b = c * testing::random_poly(rng, vars, 2, 3);
    if (a.is_zero() || b.is_zero()) continue;
    Poly g = gcd(a, b);
    CHECK(divide_exact(a, g).has_value());
    CHECK(divide_exact(b, g).has_value());
    if (!c.is_zero()) CHECK(divide_exact(g, canonicalize(c).primitive).has_value());
  }
}
