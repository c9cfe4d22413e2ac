/**
 * @file linalg.hpp
 * @brief Small dense exact linear algebra over a field type T.
 *
 * T is RadicalScalar or PointScalar (or double for diagnostics).  A
 * default-constructed T is zero.  Pivots are chosen by a cheapness score so
 * radical-free, short entries are preferred over radical ones.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "twq/pointfield.hpp"
#include "twq/radical.hpp"
#include "twq/sparse.hpp"

namespace twq {

inline std::size_t pivot_cost(const RadicalScalar& x) {
  std::size_t c = x.den().size() - 1;
  for (const auto& p : x.parts()) c += p.second.size() + (p.first ? 4 : 0);
  return c;
}
inline std::size_t pivot_cost(const PointScalar& x) {
  std::size_t c = 0;
  for (const auto& p : x.parts()) c += 1 + (p.first ? 4 : 0);
  return c;
}
inline std::size_t pivot_cost(double x) { return std::fabs(x) > 0 ? 0 : 1; }

inline RadicalScalar field_inverse(const RadicalScalar& x) { return x.inverse(); }
inline PointScalar field_inverse(const PointScalar& x) { return x.inverse(); }
inline double field_inverse(double x) { return 1.0 / x; }

template <class T>
struct Dense {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Dense() = default;
  Dense(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Dense identity(int n, const T& one) {
    Dense m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  Dense transpose() const {
    Dense t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Dense operator*(const Dense& x, const Dense& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Dense: shape mismatch");
    Dense z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const T& u = x(i, k);
        if (ring_is_zero(u)) continue;
        for (int j = 0; j < y.cols; ++j)
          if (!ring_is_zero(y(k, j))) z(i, j) += u * y(k, j);
      }
    return z;
  }
  friend bool operator==(const Dense& x, const Dense& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

/// reduced row echelon form in place; returns pivot columns
template <class T>
std::vector<int> rref(Dense<T>& m) {
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int best = -1;
    std::size_t cost = 0;
    for (int i = row; i < m.rows; ++i)
      if (!ring_is_zero(m(i, col))) {
        std::size_t c = pivot_cost(m(i, col));
        if (best < 0 || c < cost) {
          best = i;
          cost = c;
        }
      }
    if (best < 0) continue;
    if (best != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(best, j), m(row, j));
    const T inv = field_inverse(m(row, col));
    for (int j = col; j < m.cols; ++j)
      if (!ring_is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || ring_is_zero(m(i, col))) continue;
      const T f = m(i, col);
      for (int j = col; j < m.cols; ++j)
        if (!ring_is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <class T>
int rank(Dense<T> m) {
  return static_cast<int>(rref(m).size());
}

/// basis of {x : m x = 0}, one vector per free column
template <class T>
std::vector<std::vector<T>> nullspace(Dense<T> m, const T& one) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<T>> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<T> x(m.cols);
    x[f] = one;
    for (std::size_t k = 0; k < piv.size(); ++k)
      if (!ring_is_zero(m(static_cast<int>(k), f))) x[piv[k]] = -m(static_cast<int>(k), f);
    out.push_back(std::move(x));
  }
  return out;
}

/// inverse of a square matrix; throws std::domain_error when singular
template <class T>
Dense<T> inverse(const Dense<T>& m, const T& one) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  const int n = m.rows;
  Dense<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = one;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  Dense<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace twq
