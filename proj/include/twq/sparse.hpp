/**
 * @file sparse.hpp
 * @brief Row-major sparse matrices over any exact ring type.
 *
 * Rows are sorted column lists with no stored zeros, so structural equality
 * is value equality.  Accumulation never default-constructs a zero of T,
 * which lets T be a type whose zero carries context (PointScalar).
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twq {

template <class T>
bool ring_is_zero(const T& x) {
  if constexpr (requires { x.is_zero(); })
    return x.is_zero();
  else
    return x == T(0);
}

template <class T>
class SparseMatrix {
 public:
  using Entry = std::pair<int, T>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}
  static SparseMatrix identity(int n, const T& one) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.rows_[i].emplace_back(i, one);
    return m;
  }
  static SparseMatrix diagonal(const std::vector<T>& d) {
    SparseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!ring_is_zero(d[i])) m.rows_[i].emplace_back(static_cast<int>(i), d[i]);
    return m;
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<Entry>& row(int i) const { return rows_[i]; }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  /// entry (r,c) += x; zeros are dropped
  void add(int r, int c, const T& x) {
    if (r < 0 || r >= rows() || c < 0 || c >= cols_) throw std::out_of_range("SparseMatrix::add");
    if (ring_is_zero(x)) return;
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int k) { return e.first < k; });
    if (it != row.end() && it->first == c) {
      it->second += x;
      if (ring_is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, Entry(c, x));
    }
  }
  const T* find(int r, int c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int k) { return e.first < k; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }
  T get(int r, int c, const T& zero = T()) const {
    const T* p = find(r, c);
    return p ? *p : zero;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (int i = 0; i < rows(); ++i)
      for (const auto& [j, x] : rows_[i]) t.rows_[j].emplace_back(i, x);
    return t;
  }

  template <class F>
  auto map(F f) const -> SparseMatrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    SparseMatrix<U> out(rows(), cols_);
    for (int i = 0; i < rows(); ++i)
      for (const auto& [j, x] : rows_[i]) out.add(i, j, f(x));
    return out;
  }

  SparseMatrix scaled(const T& c) const {
    return map([&](const T& x) { return x * c; });
  }

  /// y = M v for a dense vector
  std::vector<T> apply(const std::vector<T>& v, const T& zero) const {
    std::vector<T> y(rows(), zero);
    for (int i = 0; i < rows(); ++i)
      for (const auto& [j, x] : rows_[i])
        if (!ring_is_zero(v[j])) y[i] += x * v[j];
    return y;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    check_shape(a, b);
    SparseMatrix c = a;
    for (int i = 0; i < b.rows(); ++i)
      for (const auto& [j, x] : b.rows_[i]) c.add(i, j, x);
    return c;
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    check_shape(a, b);
    SparseMatrix c = a;
    for (int i = 0; i < b.rows(); ++i)
      for (const auto& [j, x] : b.rows_[i]) c.add(i, j, -x);
    return c;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
    SparseMatrix c(a.rows(), b.cols_);
    for (int i = 0; i < a.rows(); ++i) {
      std::map<int, T> acc;
      for (const auto& [k, x] : a.rows_[i])
        for (const auto& [j, y] : b.rows_[k]) {
          auto it = acc.find(j);
          if (it == acc.end())
            acc.emplace(j, x * y);
          else
            it->second += x * y;
        }
      for (auto& [j, v] : acc)
        if (!ring_is_zero(v)) c.rows_[i].emplace_back(j, std::move(v));
    }
    return c;
  }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

 private:
  int cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
  static void check_shape(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch");
  }
};

/// Kronecker product with the row index of a as the slow index
template <class T>
SparseMatrix<T> kron(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  SparseMatrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [j, x] : a.row(i))
      for (int k = 0; k < b.rows(); ++k)
        for (const auto& [l, y] : b.row(k)) c.add(i * b.rows() + k, j * b.cols() + l, x * y);
  return c;
}

}  // namespace twq
