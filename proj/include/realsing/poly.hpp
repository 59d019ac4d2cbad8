#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace realsing {

using Rational = mpq_class;

std::string to_string(const Rational& q);

enum class VarKind : std::uint8_t { Time = 0, Dependent = 1, Parameter = 2 };

/// A coordinate of the jet space or a system parameter.
///
/// Variables are totally ordered: the independent variable t first, then
/// dependent jet coordinates by derivative order and function index, then
/// parameters by declaration index. The name only serves printing; identity
/// is (kind, order, index).
class VariableId {
 public:
  VariableId() = default;

  static VariableId time();
  static VariableId dependent(std::string name, unsigned index, unsigned order);
  static VariableId parameter(std::string name, unsigned index);

  VarKind kind() const { return kind_; }
  unsigned index() const { return index_; }
  unsigned order() const { return order_; }
  const std::string& name() const { return name_; }

  bool is_time() const { return kind_ == VarKind::Time; }
  bool is_dependent() const { return kind_ == VarKind::Dependent; }
  bool is_parameter() const { return kind_ == VarKind::Parameter; }
  bool is_jet() const { return kind_ != VarKind::Parameter; }

  /// The same function differentiated `k` more times.
  VariableId derivative(unsigned k = 1) const;

  /// u, u', u'', u''' and D(u,k) from order 4 on.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const VariableId& a, const VariableId& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    return a.index_ <=> b.index_;
  }
  friend bool operator==(const VariableId& a, const VariableId& b) {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.index_ == b.index_;
  }

 private:
  VariableId(VarKind kind, std::string name, unsigned index, unsigned order)
      : kind_(kind), index_(index), order_(order), name_(std::move(name)) {}

  VarKind kind_ = VarKind::Time;
  unsigned index_ = 0;
  unsigned order_ = 0;
  std::string name_ = "t";
};

/// Power product; factors sorted by ascending variable, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<VariableId, unsigned>;

  Monomial() = default;
  explicit Monomial(const VariableId& x, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned degree(const VariableId& x) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Precondition: divides(other).
  Monomial quotient_of(const Monomial& other) const;
  /// Drops x entirely.
  Monomial without(const VariableId& x) const;
  /// Componentwise minimum.
  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Degree-lexicographic comparison: total degree first, then the exponent of
/// the greatest variable where the monomials differ. Returns <0, 0, >0.
int compare_terms(const Monomial& a, const Monomial& b);

struct DescendingTermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_terms(a, b) > 0; }
};

using Point = std::map<VariableId, Rational>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in descending deglex order; no zero coefficients are stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, DescendingTermOrder>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c);

  static Poly variable(const VariableId& x);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term if the polynomial is constant; throws otherwise.
  Rational constant_value() const;
  Rational constant_term() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  unsigned total_degree() const;
  unsigned degree(const VariableId& x) const;
  bool contains(const VariableId& x) const;
  std::vector<VariableId> variables() const;

  /// Coefficients of p viewed as univariate in x; index i holds the
  /// coefficient of x^i. Empty for the zero polynomial.
  std::vector<Poly> coefficients(const VariableId& x) const;
  static Poly from_coefficients(const VariableId& x, const std::vector<Poly>& coeffs);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(Poly a, long c) { return a *= Rational(c); }

  Poly pow(unsigned e) const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

enum class ArithOp { Add, Sub, Mul, Neg };

/// Binary ring operation; `rhs` is ignored for Neg.
Poly arith(const Poly& lhs, ArithOp op, const Poly& rhs);

/// Simultaneous substitution of variables by polynomials.
Poly substitute(const Poly& p, const std::map<VariableId, Poly>& bindings);
Poly substitute(const Poly& p, const Point& values);

/// Exact value at a point binding every variable of p.
Rational evaluate(const Poly& p, const Point& point);

Poly partial_derivative(const Poly& p, const VariableId& x);

struct Canonical {
  Rational content;
  Poly primitive;
};

/// p = content * primitive, primitive has coprime integer coefficients and a
/// positive coefficient on its greatest term. Zero maps to (0, 0).
Canonical canonicalize(const Poly& p);

/// Quotient if `divisor` divides `p` exactly in Q[vars].
std::optional<Poly> divide_exact(const Poly& p, const Poly& divisor);

/// Canonical (primitive, positive) greatest common divisor; gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct Factorization {
  Rational content;
  std::vector<std::pair<Poly, unsigned>> factors;
  Poly expand() const;
};

/// Minimal factorization: monomial content, square-free decomposition, and
/// splitting of univariate linear/quadratic factors with rational roots.
/// Factors are canonical primitives in deterministic order. Throws on zero.
Factorization factor_basic(const Poly& p);

/// Square-free decomposition only; used by the factorizer and by tests.
Factorization square_free(const Poly& p);

}  // namespace realsing
