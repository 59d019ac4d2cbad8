#include "realsing/pgauss.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace realsing {

bool LinearForm::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Poly& c) { return c.is_zero(); });
}

Rational LinearForm::evaluate(const Point& params, const std::vector<Rational>& r) const {
  Rational num = 0;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    if (!coefficients[k].is_zero()) num += realsing::evaluate(coefficients[k], params) * r.at(k);
  Rational den = realsing::evaluate(denominator, params);
  if (den == 0) throw std::domain_error("denominator vanishes at the given point");
  return num / den;
}

bool ParamSolution::is_free(std::size_t column) const {
  return std::find(free_columns.begin(), free_columns.end(), column) != free_columns.end();
}

namespace {

std::string parenthesized(const Poly& p) {
  return (p.size() > 1) ? "(" + p.to_string() + ")" : p.to_string();
}

std::string form_text(const LinearForm& f) {
  std::string num;
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < f.coefficients.size(); ++k) {
    const Poly& c = f.coefficients[k];
    if (c.is_zero()) continue;
    ++nonzero;
    std::string r = "r" + std::to_string(k + 1);
    std::string term;
    if (c == Poly(1)) {
      term = r;
    } else if (c == Poly(-1)) {
      term = "-" + r;
    } else {
      term = parenthesized(c) + "*" + r;
    }
    num += num.empty() ? term : " + " + term;
  }
  if (nonzero == 0) return "0";
  if (f.denominator == Poly(1)) return num;
  if (nonzero > 1) num = "(" + num + ")";
  const Poly& d = f.denominator;
  bool bare = d.size() == 1 && d.total_degree() <= 1 && d.leading_coefficient() == 1;
  return num + "/" + (bare ? d.to_string() : "(" + d.to_string() + ")");
}

// -------- guard-relative entry status --------

bool derivably_zero(const Guard& g, const Poly& e) {
  return e.is_zero() || deduce(g, Atom(e, Relation::Eq)) == Deduction::Derivable;
}

bool derivably_nonzero(const Guard& g, const Poly& e) {
  return !e.is_zero() && deduce(g, Atom(e, Relation::Ne)) == Deduction::Derivable;
}

using Measure = std::pair<long, std::size_t>;

Measure measure(const StackCase& s) {
  std::size_t rows = s.matrix.size(), cols = rows ? s.matrix[0].size() : 0;
  long mu1 = static_cast<long>(std::min(rows, cols)) - static_cast<long>(s.p);
  std::size_t mu2 = 0;
  for (std::size_t m = s.p; m < rows; ++m)
    for (std::size_t n = s.p; n < cols; ++n) {
      const Poly& e = s.matrix[m][n];
      if (!derivably_nonzero(s.guard, e) && !derivably_zero(s.guard, e)) ++mu2;
    }
  return {mu1, mu2};
}

struct Candidate {
  std::size_t row, col;
  const Poly* entry;
};

// Constants first, then lower total degree, then position.
bool better(const Candidate& a, const Candidate& b) {
  auto key = [](const Candidate& c) {
    return std::make_tuple(c.entry->is_constant() ? 0 : 1, c.entry->total_degree(), c.row, c.col);
  };
  return key(a) < key(b);
}

void remove_rational_content(std::vector<Poly>& row) {
  mpz_class num = 0, den = 1;
  for (const auto& e : row)
    for (const auto& [mono, c] : e.terms()) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
  if (num == 0 || (num == 1 && den == 1)) return;
  Rational scale(den, num);
  scale.canonicalize();
  for (auto& e : row) e *= scale;
}

void pivot_and_eliminate(StackCase& s, std::size_t m, std::size_t n) {
  std::swap(s.matrix[s.p], s.matrix[m]);
  if (n != s.p) {
    for (auto& row : s.matrix) std::swap(row[s.p], row[n]);
    std::swap(s.perm[s.p], s.perm[n]);
  }
  const std::vector<Poly>& prow = s.matrix[s.p];
  const Poly pivot = prow[s.p];
  for (std::size_t k = s.p + 1; k < s.matrix.size(); ++k) {
    auto& row = s.matrix[k];
    if (row[s.p].is_zero()) continue;
    const Poly factor = row[s.p];
    for (std::size_t j = s.p; j < row.size(); ++j) row[j] = pivot * row[j] - factor * prow[j];
    remove_rational_content(row);
  }
  ++s.p;
}

}  // namespace

ParamSolution construct_solution(const StackCase& echelon) {
  const auto& a = echelon.matrix;
  const std::size_t cols = echelon.perm.size();
  const std::size_t rank = echelon.p;
  ParamSolution h;
  h.perm = echelon.perm;
  h.dependent_count = rank;
  for (std::size_t j = rank; j < cols; ++j) h.free_columns.push_back(echelon.perm[j]);
  std::sort(h.free_columns.begin(), h.free_columns.end());
  const std::size_t nfree = h.free_columns.size();

  // Forms indexed by position in the permuted matrix.
  std::vector<LinearForm> at(cols);
  for (std::size_t j = rank; j < cols; ++j) {
    LinearForm f;
    f.coefficients.assign(nfree, Poly());
    auto k = static_cast<std::size_t>(
        std::find(h.free_columns.begin(), h.free_columns.end(), echelon.perm[j]) - h.free_columns.begin());
    f.coefficients[k] = Poly(1);
    at[j] = std::move(f);
  }
  for (std::size_t jj = rank; jj-- > 0;) {
    // sum_{k > jj} A[jj][k] * x_k  as numerators over a common denominator.
    std::vector<Poly> num(nfree);
    Poly den(1);
    for (std::size_t k = jj + 1; k < cols; ++k) {
      const Poly& c = a[jj][k];
      if (c.is_zero() || at[k].is_zero()) continue;
      const LinearForm& xk = at[k];
      Poly g = gcd(den, xk.denominator);
      Poly left = *divide_exact(xk.denominator, g);
      Poly right = *divide_exact(den, g);
      for (std::size_t r = 0; r < nfree; ++r) num[r] = num[r] * left + c * xk.coefficients[r] * right;
      den = den * left;
    }
    LinearForm f;
    f.coefficients.resize(nfree);
    for (std::size_t r = 0; r < nfree; ++r) f.coefficients[r] = -num[r];
    f.denominator = den * a[jj][jj];
    // Cancel common factors and normalize the denominator.
    Poly g = f.denominator;
    for (const auto& c : f.coefficients)
      if (!c.is_zero()) g = gcd(g, c);
    if (f.is_zero()) {
      f.denominator = Poly(1);
    } else {
      if (!g.is_constant()) {
        f.denominator = *divide_exact(f.denominator, g);
        for (auto& c : f.coefficients) c = *divide_exact(c, g);
      }
      auto canon = canonicalize(f.denominator);
      f.denominator = canon.primitive;
      Rational inv = 1 / canon.content;
      for (auto& c : f.coefficients) c *= inv;
    }
    at[jj] = std::move(f);
  }
  h.values.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) h.values[echelon.perm[j]] = std::move(at[j]);
  return h;
}

std::vector<std::string> ParamSolution::equations(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < values.size(); ++c) out.push_back(names.at(c) + " = " + form_text(values[c]));
  return out;
}

std::size_t intersection_dim(const ParamSolution& h, const std::vector<std::size_t>& y) {
  auto in_y = [&](std::size_t col) { return std::find(y.begin(), y.end(), col) != y.end(); };
  std::size_t dim = h.free_count();
  for (std::size_t col : y) {
    if (h.is_free(col)) {
      --dim;
      continue;
    }
    // A dependent y-unknown may only depend on free y-unknowns, which are zero.
    const LinearForm& f = h.values.at(col);
    for (std::size_t k = 0; k < f.coefficients.size(); ++k)
      if (!f.coefficients[k].is_zero() && !in_y(h.free_columns[k]))
        throw std::logic_error("y-unknown in column " + std::to_string(col) +
                               " depends on a free unknown outside y");
  }
  return dim;
}

EliminationOutput parametric_gauss(const EliminationTask& task, const GaussOptions& options) {
  const std::size_t rows = task.matrix.size();
  const std::size_t cols = task.unknowns.size();
  if (cols == 0) throw std::invalid_argument("elimination needs at least one unknown");
  for (const auto& r : task.matrix)
    if (r.size() != cols) throw std::invalid_argument("matrix row length differs from the number of unknowns");

  EliminationOutput out;
  struct Entry {
    StackCase s;
    Measure mu;
  };
  std::vector<Entry> stack;
  auto push = [&](StackCase s, const Measure* parent) {
    ++out.pushes;
    Measure mu{};
    if (options.check_termination) {
      mu = measure(s);
      if (parent && !(mu < *parent)) {
        ++out.measure_violations;
        out.violation_details.push_back("(" + std::to_string(parent->first) + "," + std::to_string(parent->second) +
                                        ") -> (" + std::to_string(mu.first) + "," + std::to_string(mu.second) +
                                        ") under " + s.guard.to_string());
      }
    }
    stack.push_back({std::move(s), mu});
  };

  StackCase init;
  init.matrix = task.matrix;
  init.perm.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) init.perm[j] = j;
  push(std::move(init), nullptr);

  auto in_y = [&](std::size_t original) {
    return std::find(task.y.begin(), task.y.end(), original) != task.y.end();
  };

  std::vector<EliminationCase> found;
  while (!stack.empty()) {
    Entry top = std::move(stack.back());
    stack.pop_back();
    StackCase& s = top.s;
    if (is_false(s.guard) == Refutation::DerivablyFalse) continue;

    for (std::size_t m = s.p; m < rows; ++m)
      for (std::size_t n = s.p; n < cols; ++n)
        if (!s.matrix[m][n].is_zero() && derivably_zero(s.guard, s.matrix[m][n])) s.matrix[m][n] = Poly();

    bool acted = false;
    for (bool y_phase : {false, true}) {
      std::optional<Candidate> pivot, unknown;
      for (std::size_t m = s.p; m < rows; ++m)
        for (std::size_t n = s.p; n < cols; ++n) {
          if (in_y(s.perm[n]) != y_phase) continue;
          const Poly& e = s.matrix[m][n];
          if (e.is_zero()) continue;
          Candidate c{m, n, &e};
          if (derivably_nonzero(s.guard, e)) {
            if (!pivot || better(c, *pivot)) pivot = c;
          } else if (!unknown || better(c, *unknown)) {
            unknown = c;
          }
        }
      if (pivot) {
        StackCase next = s;
        pivot_and_eliminate(next, pivot->row, pivot->col);
        push(std::move(next), &top.mu);
        acted = true;
        break;
      }
      if (unknown) {
        const Poly e = *unknown->entry;
        StackCase nonzero = s;
        nonzero.guard.add(Atom(e, Relation::Ne));
        push(std::move(nonzero), &top.mu);
        StackCase zero = s;
        zero.guard.add(Atom(e, Relation::Eq));
        zero.matrix[unknown->row][unknown->col] = Poly();
        push(std::move(zero), &top.mu);
        acted = true;
        break;
      }
    }
    if (acted) continue;

    EliminationCase c;
    c.guard = s.guard;
    c.solution = construct_solution(s);
    c.intersection_dim = intersection_dim(c.solution, task.y);
    found.push_back(std::move(c));
  }
  std::stable_sort(found.begin(), found.end(), [](const EliminationCase& a, const EliminationCase& b) {
    return a.guard.to_string() < b.guard.to_string();
  });
  out.cases = std::move(found);
  return out;
}

}  // namespace realsing
