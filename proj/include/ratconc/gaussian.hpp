#pragma once

// Gaussian rationals Q(i) and exact inertia of hermitian matrices over them.

#include "ratconc/rational.hpp"

#include <vector>

namespace ratconc {

struct GaussQ {
  Rational re, im;

  GaussQ() = default;
  GaussQ(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussQ conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
    Rational n = b.norm();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    GaussQ p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const GaussQ&, const GaussQ&) = default;
};

using GaussMatrix = std::vector<std::vector<GaussQ>>;

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
  int signature() const { return positive - negative; }
};

/// Inertia of a hermitian matrix by exact congruence (pivoted LDL*). A zero
/// diagonal with a nonzero entry h_ij is repaired by row_i += h_ij row_j, which
/// makes the new diagonal entry 2|h_ij|^2 > 0.
inline Inertia hermitian_inertia(GaussMatrix h) {
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (h[i].size() != n) throw std::invalid_argument("hermitian_inertia: matrix is not square");
    for (std::size_t j = 0; j < n; ++j)
      if (!(h[i][j] == h[j][i].conj())) throw std::invalid_argument("hermitian_inertia: matrix is not hermitian");
  }
  Inertia out;
  auto add_row = [&](std::size_t i, std::size_t j, const GaussQ& c) {  // E H E*, E = I + c e_i e_j^T
    for (std::size_t k = 0; k < n; ++k) h[i][k] = h[i][k] + c * h[j][k];
    for (std::size_t k = 0; k < n; ++k) h[k][i] = h[k][i] + h[k][j] * c.conj();
  };
  auto swap_index = [&](std::size_t a, std::size_t b) {
    std::swap(h[a], h[b]);
    for (auto& row : h) std::swap(row[a], row[b]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && h[p][p].is_zero()) ++p;
    if (p == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = k; j < n && !found; ++j)
          if (!h[i][j].is_zero()) {
            add_row(i, j, h[i][j]);
            p = i;
            found = true;
          }
      if (!found) {
        out.zero += static_cast<int>(n - k);
        break;
      }
    }
    swap_index(k, p);
    const GaussQ pivot = h[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      if (h[r][k].is_zero()) continue;
      GaussQ f = h[r][k] / pivot;
      add_row(r, k, GaussQ(Rational(0)) - f);
    }
    (pivot.re > 0 ? out.positive : out.negative) += 1;
  }
  return out;
}

}  // namespace ratconc
