#pragma once

// Linear algebra over Q: reduced row echelon form, rank, kernels.

#include "ratconc/rational.hpp"

#include <vector>

namespace ratconc {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

/// Nonzero rows of the RREF: a canonical basis of the row space.
inline QMatrix row_space_basis(QMatrix m) {
  auto piv = rref(m);
  m.resize(piv.size());
  return m;
}

/// Basis of {x : x * M = 0} for an r x c matrix M (x has length r).
inline QMatrix left_kernel(const QMatrix& m, std::size_t rows) {
  // Solve M^T x^T = 0.
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  QMatrix mt(cols, QVector(rows, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) mt[j][i] = m[i][j];
  auto piv = rref(mt);
  std::vector<bool> is_pivot(rows, false);
  for (auto p : piv) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t f = 0; f < rows; ++f) {
    if (is_pivot[f]) continue;
    QVector x(rows, Rational(0));
    x[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -mt[k][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// True iff v lies in the row space spanned by `basis`.
inline bool in_span(const QMatrix& basis, const QVector& v) {
  QMatrix m = basis;
  std::size_t r0 = rank(m);
  m.push_back(v);
  return rank(std::move(m)) == r0;
}

inline Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) { std::swap(m[p], m[c]); det = -det; }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace ratconc
