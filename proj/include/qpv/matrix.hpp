#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "qpv/error.hpp"

namespace qpv {

/// Dense row-major matrix over an exact scalar type.
///
/// Products keep operand order (`a(i,k) * b(k,j)`), so the entries may come
/// from a noncommutative ring such as a quaternion algebra.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::SizeMismatch, "ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& one = T(1)) {
    Matrix m(n, n, one - one);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(rows_, cols_, U(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc, T(0));
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::SizeMismatch, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::SizeMismatch, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Left scalar multiple `s * m` (entries `s * m(i,j)`).
template <class S, class T>
  requires(!std::is_same_v<std::decay_t<S>, Matrix<T>>)
Matrix<T> operator*(const S& s, const Matrix<T>& m) {
  return m.map([&](const T& x) { return T(s * x); });
}

/// Right scalar multiple `m * s` (entries `m(i,j) * s`).
template <class T, class S>
  requires(!std::is_same_v<std::decay_t<S>, Matrix<T>>)
Matrix<T> operator*(const Matrix<T>& m, const S& s) {
  return m.map([&](const T& x) { return T(x * s); });
}

template <class T>
bool is_zero(const Matrix<T>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const T& x) { return is_zero(x); });
}

template <class T>
T trace(const Matrix<T>& m) {
  T t(0);
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t = t + m(i, i);
  return t;
}

/// Characteristic polynomial det(tI - A) by Berkowitz's division-free
/// algorithm; valid over any commutative ring. Returns c with c[0] = 1 and
/// det(tI - A) = sum_k c[k] t^(n-k).
template <class T>
std::vector<T> charpoly(const Matrix<T>& a) {
  if (!a.is_square()) throw Error(Errc::SizeMismatch, "charpoly of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<T> v{T(1)};
  if (n == 0) return v;
  v.push_back(-a(0, 0));
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> q(r + 2, T(0));
    q[0] = T(1);
    q[1] = -a(r, r);
    std::vector<T> col(r, T(0));
    for (std::size_t i = 0; i < r; ++i) col[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T s(0);
      for (std::size_t j = 0; j < r; ++j) s = s + a(r, j) * col[j];
      q[k + 2] = -s;
      if (k + 1 < r) {
        std::vector<T> next(r, T(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<T> nv(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] = nv[i] + q[i - j] * v[j];
    v = std::move(nv);
  }
  return v;
}

template <class T>
T det(const Matrix<T>& a) {
  const auto c = charpoly(a);
  return (a.rows() % 2 == 0) ? c.back() : -c.back();
}

/// Classical adjugate via Cayley-Hamilton; division-free.
template <class T>
Matrix<T> adjugate(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  const auto c = charpoly(a);
  Matrix<T> p = Matrix<T>::identity(n) * c[0];
  for (std::size_t k = 1; k < n; ++k) p = p * a + Matrix<T>::identity(n) * c[k];
  return (n % 2 == 1) ? p : -p;
}

/// Inverse over a commutative ring: adj(A) / det(A); det must be a unit.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const T d = det(a);
  if (!is_unit(d)) throw Error(Errc::NotAUnit, "matrix determinant is not a unit");
  return adjugate(a) * inverse(d);
}

/// Right kernel of `a` over a field: a basis of { v : a v = 0 }.
template <class T>
std::vector<std::vector<T>> kernel(Matrix<T> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = row; i < m; ++i) {
      if (is_unit(a(i, col))) {
        piv = i;
        break;
      }
    }
    if (piv == m) {
      for (std::size_t i = row; i < m; ++i)
        if (!is_zero(a(i, col))) throw Error(Errc::NotAUnit, "kernel: coefficient ring is not a field");
      continue;
    }
    if (piv != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    const T inv = inverse(a(row, col));
    for (std::size_t j = 0; j < n; ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const T f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = a(i, j) - f * a(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<T>> basis;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(n, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return a.cols() - kernel(a).size();
}

}  // namespace qpv
