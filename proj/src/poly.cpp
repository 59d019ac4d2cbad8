#include "realsing/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace realsing {

std::string to_string(const Rational& q) { return q.get_str(); }

VariableId VariableId::time() { return {VarKind::Time, "t", 0, 0}; }

VariableId VariableId::dependent(std::string name, unsigned index, unsigned order) {
  return {VarKind::Dependent, std::move(name), index, order};
}

VariableId VariableId::parameter(std::string name, unsigned index) {
  return {VarKind::Parameter, std::move(name), index, 0};
}

VariableId VariableId::derivative(unsigned k) const {
  if (!is_dependent()) throw std::logic_error("only dependent variables have derivatives");
  return dependent(name_, index_, order_ + k);
}

std::string VariableId::to_string() const {
  if (!is_dependent() || order_ == 0) return name_;
  if (order_ <= 3) return name_ + std::string(order_, '\'');
  return "D(" + name_ + "," + std::to_string(order_) + ")";
}

// ---------------------------------------------------------------------------

Monomial::Monomial(const VariableId& x, unsigned exponent) {
  if (exponent > 0) factors_.emplace_back(x, exponent);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [x, e] : factors_) d += e;
  return d;
}

unsigned Monomial::degree(const VariableId& x) const {
  for (const auto& [y, e] : factors_)
    if (y == x) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [x, e] : factors_)
    if (other.degree(x) < e) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  for (const auto& [x, e] : other.factors_) {
    unsigned d = e - degree(x);
    if (d > 0) r.factors_.emplace_back(x, d);
  }
  return r;
}

Monomial Monomial::without(const VariableId& x) const {
  Monomial r;
  for (const auto& f : factors_)
    if (!(f.first == x)) r.factors_.push_back(f);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (const auto& [x, e] : a.factors_) {
    unsigned d = std::min(e, b.degree(x));
    if (d > 0) r.factors_.emplace_back(x, d);
  }
  return r;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [x, e] : factors_) {
    if (!s.empty()) s += '*';
    s += x.to_string();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

int compare_terms(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // Walk from the greatest variable downwards.
  auto ia = a.factors().rbegin(), ea = a.factors().rend();
  auto ib = b.factors().rbegin(), eb = b.factors().rend();
  while (ia != ea && ib != eb) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
      ++ia;
      ++ib;
    } else {
      return ia->first < ib->first ? -1 : 1;
    }
  }
  if (ia == ea && ib == eb) return 0;
  return ia == ea ? -1 : 1;
}

// ---------------------------------------------------------------------------

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

Poly Poly::variable(const VariableId& x) { return Poly(Monomial(x), Rational(1)); }

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant: " + to_string());
  return constant_term();
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.begin()->second;
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned Poly::degree(const VariableId& x) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(x));
  return d;
}

bool Poly::contains(const VariableId& x) const { return degree(x) > 0; }

std::vector<VariableId> Poly::variables() const {
  std::vector<VariableId> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [x, e] : m.factors()) vars.push_back(x);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::vector<Poly> Poly::coefficients(const VariableId& x) const {
  std::vector<Poly> out;
  if (is_zero()) return out;
  out.resize(degree(x) + 1);
  for (const auto& [m, c] : terms_) out[m.degree(x)].add_term(m.without(x), c);
  return out;
}

Poly Poly::from_coefficients(const VariableId& x, const std::vector<Poly>& coeffs) {
  Poly r;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    r += coeffs[i] * Poly(Monomial(x, static_cast<unsigned>(i)), Rational(1));
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += m.to_string();
    }
  }
  return s;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
  return true;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    int c = compare_terms(ia->first, ib->first);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int v = cmp(ia->second, ib->second);
    if (v != 0) return v < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return std::strong_ordering::equal;
  return ia == a.terms_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---------------------------------------------------------------------------

Poly arith(const Poly& lhs, ArithOp op, const Poly& rhs) {
  switch (op) {
    case ArithOp::Add: return lhs + rhs;
    case ArithOp::Sub: return lhs - rhs;
    case ArithOp::Mul: return lhs * rhs;
    case ArithOp::Neg: return -lhs;
  }
  throw std::logic_error("unknown arithmetic operation");
}

Poly substitute(const Poly& p, const std::map<VariableId, Poly>& bindings) {
  if (bindings.empty()) return p;
  std::map<std::pair<VariableId, unsigned>, Poly> powers;
  auto power = [&](const VariableId& x, unsigned e) -> const Poly& {
    auto key = std::make_pair(x, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, bindings.at(x).pow(e)).first->second;
  };
  Poly result;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    Poly factor(c);
    for (const auto& [x, e] : m.factors()) {
      if (bindings.count(x)) {
        factor *= power(x, e);
      } else {
        kept = kept * Monomial(x, e);
      }
    }
    result += factor * Poly(kept, Rational(1));
  }
  return result;
}

Poly substitute(const Poly& p, const Point& values) {
  std::map<VariableId, Poly> bindings;
  for (const auto& [x, v] : values) bindings.emplace(x, Poly(v));
  return substitute(p, bindings);
}

Rational evaluate(const Poly& p, const Point& point) {
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [x, e] : m.factors()) {
      auto it = point.find(x);
      if (it == point.end()) throw std::invalid_argument("no value for variable " + x.to_string());
      Rational b;
      mpz_pow_ui(b.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(b.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      t *= b;
    }
    sum += t;
  }
  return sum;
}

Poly partial_derivative(const Poly& p, const VariableId& x) {
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m.degree(x);
    if (e == 0) continue;
    Monomial reduced = m.without(x) * Monomial(x, e - 1);
    r += Poly(reduced, c * e);
  }
  return r;
}

Canonical canonicalize(const Poly& p) {
  if (p.is_zero()) return {Rational(0), Poly()};
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading_coefficient() < 0) content = -content;
  Rational inv = 1 / content;
  return {content, p * inv};
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly quotient;
  Poly rest = p;
  const Monomial& lm = divisor.leading_monomial();
  const Rational& lc = divisor.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& rm = rest.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Poly t(lm.quotient_of(rm), rest.leading_coefficient() / lc);
    quotient += t;
    rest -= t * divisor;
  }
  return quotient;
}

}  // namespace realsing
