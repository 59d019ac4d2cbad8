#include <doctest.h>

#include <algorithm>

#include "realsing/jet.hpp"
#include "support/printers.hpp"
#include "support/random.hpp"
#include "support/systems.hpp"

using namespace realsing;
using realsing::testing::Rng;
using realsing::testing::var;

namespace {

const VariableId T = VariableId::time();
const VariableId U = VariableId::dependent("u", 0, 0);
const VariableId V = VariableId::dependent("v", 1, 0);
const VariableId W = VariableId::dependent("w", 2, 0);
const VariableId CHI = VariableId::parameter("chi", 0);

Poly d(const VariableId& x, unsigned k) { return var(x.derivative(k)); }

bool same_set(std::vector<Poly> a, std::vector<Poly> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool contains(const std::vector<Poly>& eqs, const Poly& p) {
  Poly c = canonicalize(p).primitive;
  return std::find(eqs.begin(), eqs.end(), c) != eqs.end();
}

}  // namespace

TEST_CASE("contact_trans examples") {
  Poly t = var(T), u = var(U), u1 = d(U, 1);
  CHECK(contact_trans(u1 * u1 + u * u + t * t - 1, 1) == t * 2 + u * u1 * 2);
  CHECK(contact_trans(Poly(5), 3).is_zero());
  CHECK(contact_trans(u1.pow(3) + var(CHI) * u * u1 - t, 1) == var(CHI) * u1 * u1 - 1);
  CHECK_THROWS_AS(contact_trans(d(U, 2), 1), std::invalid_argument);
}

TEST_CASE("formal_derivative examples") {
  Poly t = var(T), u = var(U), v = var(V), w = var(W);
  CHECK(formal_derivative(d(V, 1) - w) == d(V, 2) - d(W, 1));
  CHECK(formal_derivative(d(W, 1)) == d(W, 2));
  Poly p = t * v * d(U, 1) - t * u + 1;
  CHECK(formal_derivative(p) == t * v * d(U, 2) + (t * d(V, 1) + v - t) * d(U, 1) - u);
  CHECK(reduce_modulo(formal_derivative(p), {d(V, 1) - w, d(W, 1)}) ==
        t * v * d(U, 2) + (t * w + v - t) * d(U, 1) - u);
}

TEST_CASE("prolong lh1") {
  auto lh1 = testing::lh_system(true);
  Poly t = var(T), u = var(U), v = var(V), w = var(W);
  auto p2 = prolong(lh1, 2, true);
  CHECK(p2.order == 2);
  CHECK(contains(p2.equations, t * v * d(U, 2) + (t * w + v - t) * d(U, 1) - u));
  CHECK(contains(p2.equations, d(V, 2)));
  CHECK(contains(p2.equations, d(W, 2)));
  CHECK(p2.equations.size() == 6);

  auto p3 = prolong(lh1, 3, true);
  CHECK(contains(p3.equations, t * v * d(U, 3) + ((t * w + v) * 2 - t) * d(U, 2) + (w - 1) * 2 * d(U, 1)));
  CHECK(p3.equations.size() == 9);

  CHECK(prolong(lh1, 1, true) == lh1);
  CHECK_THROWS_AS(prolong(p2, 1, true), std::invalid_argument);
}

TEST_CASE("prolongation composes without reduction") {
  for (bool with_t : {true, false}) {
    auto s = testing::lh_system(with_t);
    CHECK(same_set(prolong(prolong(s, 2, false), 3, false).equations, prolong(s, 3, false).equations));
    CHECK(same_set(prolong(prolong(s, 1, false), 3, false).equations, prolong(s, 3, false).equations));
  }
  auto g = testing::gather_system();
  CHECK(same_set(prolong(prolong(g, 2, false), 4, false).equations, prolong(g, 4, false).equations));
}

TEST_CASE("vessiot matrix examples") {
  Poly t = var(T), u = var(U), v = var(V), w = var(W), u1 = d(U, 1), chi = var(CHI);
  auto sm = vessiot_matrix(testing::sphere_system());
  REQUIRE(sm.rows() == 1);
  CHECK(sm.entries[0] == std::vector<Poly>{u1, t + u * u1});

  auto gm = vessiot_matrix(testing::gather_system());
  REQUIRE(gm.rows() == 1);
  CHECK(gm.entries[0] == std::vector<Poly>{u1 * u1 * 3 + chi * u, chi * u1 * u1 - 1});

  auto lm = vessiot_matrix(testing::lh_system(true), RowSelection::All, true);
  REQUIRE(lm.rows() == 3);
  CHECK(lm.entries[0] == std::vector<Poly>{t * v, 0, 0, (t * w + v - t) * u1 - u});
  CHECK(lm.entries[1] == std::vector<Poly>{0, 1, 0, 0});
  CHECK(lm.entries[2] == std::vector<Poly>{0, 0, 1, 0});

  auto unreduced = vessiot_matrix(testing::lh_system(true), RowSelection::All, false);
  CHECK(unreduced.entries[1][3] == -d(W, 1));

  auto l2 = vessiot_matrix(testing::lh_system(false), RowSelection::All, true);
  CHECK(l2.entries[0][3] == (t * w + v - 1) * u1);

  auto top2 = vessiot_matrix(prolong(testing::lh_system(true), 2, true));
  REQUIRE(top2.rows() == 3);
  CHECK(top2.entries[0][0] == t * v);
  CHECK(top2.entries[0][3] == ((t * w + v) * 2 - t) * d(U, 2) + (w - 1) * 2 * u1);
}

TEST_CASE("contact_trans is a derivation") {
  Rng rng(31);
  std::vector<VariableId> vars{T, U, U.derivative(1), V, CHI};
  for (int i = 0; i < 100; ++i) {
    Poly p = testing::random_poly(rng, vars, 3, 4);
    Poly q = testing::random_poly(rng, vars, 3, 4);
    unsigned ell = static_cast<unsigned>(rng.integer(1, 3));
    CHECK(contact_trans(p * q, ell) == contact_trans(p, ell) * q + p * contact_trans(q, ell));
  }
}

TEST_CASE("lower-order rows vanish on the prolonged variety") {
  Rng rng(32);
  auto s = prolong(testing::lh_system(true), 2, true);
  auto all = vessiot_matrix(s, RowSelection::All, false);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    Rational t = rng.rational(3, 3), v = rng.rational(3, 3), w = rng.rational(3, 3), u = rng.rational(3, 3);
    if (t == 0 || v == 0) continue;
    Point pt{{T, t}, {U, u}, {V, v}, {W, w}};
    pt[V.derivative(1)] = w;
    pt[W.derivative(1)] = 0;
    Rational u1 = (t * u - 1) / (t * v);
    pt[U.derivative(1)] = u1;
    pt[U.derivative(2)] = -((t * w + v - t) * u1 - u) / (t * v);
    pt[V.derivative(2)] = 0;
    pt[W.derivative(2)] = 0;
    for (const auto& e : s.equations) REQUIRE(evaluate(e, pt) == 0);
    for (std::size_t r = 0; r < all.rows(); ++r) {
      if (jet_order(s.equations[all.source[r]]) == s.order) continue;
      for (const auto& e : all.entries[r]) CHECK(evaluate(e, pt) == 0);
      ++checked;
    }
  }
  CHECK(checked > 50);
}
