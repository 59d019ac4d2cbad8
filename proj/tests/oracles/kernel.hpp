#pragma once

#include <vector>

#include "realsing/poly.hpp"

namespace realsing::oracle {

using RMatrix = std::vector<std::vector<Rational>>;
using RVector = std::vector<Rational>;

/// Reduced row echelon form over Q; returns the rank.
inline std::size_t rref(RMatrix& a, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      Rational f = a[k][c];
      for (std::size_t j = 0; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline std::size_t rank(RMatrix a) { return rref(a); }

/// Basis of {x : A x = 0}, one vector per free column.
inline std::vector<RVector> kernel(RMatrix a, std::size_t cols) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  std::vector<RVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    RVector x(cols, Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -a[i][f];
    basis.push_back(x);
  }
  return basis;
}

inline bool in_kernel(const RMatrix& a, const RVector& x) {
  for (const auto& row : a) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    if (s != 0) return false;
  }
  return true;
}

inline RMatrix evaluate_matrix(const std::vector<std::vector<Poly>>& m, const Point& pt) {
  RMatrix out;
  for (const auto& row : m) {
    RVector r;
    for (const auto& e : row) r.push_back(evaluate(e, pt));
    out.push_back(r);
  }
  return out;
}

}  // namespace realsing::oracle
