#pragma once

// Dense matrices over the Laurent ring: products, determinants, adjugates and
// the Smith normal form over the Euclidean ring Q[t^{+-1}].

#include "ratconc/laurent.hpp"

#include <stdexcept>
#include <vector>

namespace ratconc {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

inline PolyMatrix poly_zero_matrix(std::size_t rows, std::size_t cols, Var v) {
  return PolyMatrix(rows, std::vector<LaurentPoly>(cols, LaurentPoly(v)));
}

inline PolyMatrix poly_identity(std::size_t n, Var v) {
  PolyMatrix m = poly_zero_matrix(n, n, v);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = LaurentPoly::one(v);
  return m;
}

inline PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw std::invalid_argument("matrix product: shape mismatch");
  const Var v = b[0][0].var();
  PolyMatrix out = poly_zero_matrix(a.size(), b[0].size(), v);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline PolyMatrix transpose(const PolyMatrix& a) {
  if (a.empty()) return {};
  PolyMatrix out = poly_zero_matrix(a[0].size(), a.size(), a[0][0].var());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

/// Entrywise t -> t^{-1}.
inline PolyMatrix conj(const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& e : row) e = e.conj();
  return out;
}

/// Fraction-free (Bareiss) determinant. An empty matrix has determinant 1.
inline LaurentPoly determinant(PolyMatrix m, Var v) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly::one(v);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  // Clear negative exponents row by row; remember the unit.
  int shift = 0;
  for (auto& row : m) {
    int lo = 0;
    bool any = false;
    for (const auto& e : row)
      if (!e.is_zero()) { lo = any ? std::min(lo, e.low()) : e.low(); any = true; }
    if (!any) return LaurentPoly(v);
    for (auto& e : row) e = e.shifted(-lo);
    shift += lo;
  }
  int sgn = 1;
  LaurentPoly prev = LaurentPoly::one(v);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return LaurentPoly(v);
      std::swap(m[k], m[p]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  LaurentPoly d = m[n - 1][n - 1].shifted(shift);
  return sgn < 0 ? -d : d;
}

/// adj(A), so that A * adj(A) = det(A) * I.
inline PolyMatrix adjugate(const PolyMatrix& a, Var v) {
  const std::size_t n = a.size();
  PolyMatrix out = poly_zero_matrix(n, n, v);
  if (n == 1) { out[0][0] = LaurentPoly::one(v); return out; }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<LaurentPoly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      LaurentPoly cof = determinant(std::move(minor), v);
      out[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return out;
}

struct SmithForm {
  PolyMatrix U, D, W;  // U * A * W == D
  PolyMatrix W_inverse;
  /// Diagonal entries, monic with lowest exponent 0 (0 for rank deficiency).
  std::vector<LaurentPoly> invariant_factors() const {
    std::vector<LaurentPoly> out;
    for (std::size_t i = 0; i < D.size() && i < (D.empty() ? 0 : D[0].size()); ++i) out.push_back(D[i][i]);
    return out;
  }
};

/// Smith normal form over Q[t^{+-1}]: U*A*W = D with d1 | d2 | ..., U and W
/// invertible over the Laurent ring. Nonzero diagonal entries are monic with
/// lowest exponent 0.
inline SmithForm smith_normal_form(const PolyMatrix& input) {
  if (input.empty() || input[0].empty()) throw std::invalid_argument("smith_normal_form: empty matrix");
  const std::size_t m = input.size(), n = input[0].size();
  const Var v = input[0][0].var();
  SmithForm s{poly_identity(m, v), input, poly_identity(n, v), poly_identity(n, v)};
  auto& A = s.D;

  auto row_add = [&](std::size_t dst, std::size_t src, const LaurentPoly& q) {  // row_dst += q*row_src
    for (std::size_t j = 0; j < n; ++j)
      if (!A[src][j].is_zero()) A[dst][j] += q * A[src][j];
    for (std::size_t j = 0; j < m; ++j)
      if (!s.U[src][j].is_zero()) s.U[dst][j] += q * s.U[src][j];
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const LaurentPoly& q) {  // col_dst += q*col_src
    for (std::size_t i = 0; i < m; ++i)
      if (!A[i][src].is_zero()) A[i][dst] += q * A[i][src];
    for (std::size_t i = 0; i < n; ++i)
      if (!s.W[i][src].is_zero()) s.W[i][dst] += q * s.W[i][src];
    for (std::size_t j = 0; j < n; ++j)
      if (!s.W_inverse[dst][j].is_zero()) s.W_inverse[src][j] -= q * s.W_inverse[dst][j];
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(A[a], A[b]);
    std::swap(s.U[a], s.U[b]);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : s.W) std::swap(row[a], row[b]);
    std::swap(s.W_inverse[a], s.W_inverse[b]);
  };
  // Division with remainder in the Laurent ring: span(r) < span(p).
  auto divmod = [](const LaurentPoly& a, const LaurentPoly& p) {
    LaurentPoly r = mod_laurent(a, p);
    return std::pair{exact_divide(a - r, p), r};
  };

  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      // Bring a nonzero entry of minimal span to the pivot.
      std::size_t bi = m, bj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!A[i][j].is_zero() && (bi == m || A[i][j].span() < A[bi][bj].span())) { bi = i; bj = j; }
      if (bi == m) return s;
      row_swap(k, bi);
      col_swap(k, bj);
      bool dirty = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (A[i][k].is_zero()) continue;
        auto [q, r] = divmod(A[i][k], A[k][k]);
        row_add(i, k, -q);
        if (!r.is_zero()) dirty = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (A[k][j].is_zero()) continue;
        auto [q, r] = divmod(A[k][j], A[k][k]);
        col_add(j, k, -q);
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;
      // Divisibility chain: the pivot must divide the rest of the block.
      bool chained = true;
      for (std::size_t i = k + 1; i < m && chained; ++i)
        for (std::size_t j = k + 1; j < n && chained; ++j)
          if (!divides(A[k][k], A[i][j])) {
            row_add(k, i, LaurentPoly::one(v));
            chained = false;
          }
      if (chained) break;
    }
    // Normalize the pivot by a unit q*t^e applied to row k.
    const LaurentPoly& p = A[k][k];
    LaurentPoly unit_inv = LaurentPoly::monomial(Rational(1) / p.leading(), -p.low(), v);
    for (auto& e : A[k]) e = e * unit_inv;
    for (auto& e : s.U[k]) e = e * unit_inv;
  }
  return s;
}

}  // namespace ratconc
