#pragma once

// Dense matrices over R, C or H with the trace inner product
// <x,y> = Re tr(x* y), which makes every ambient matrix space a real
// Euclidean space regardless of the coefficient field.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "matmorse/scalar.hpp"

namespace matmorse {

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
  }

  static Matrix identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1.0);
    return m;
  }
  static Matrix zero(Field f, int rows, int cols) { return Matrix(f, rows, cols); }

  Field field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool same_shape(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_;
  }

  Scalar& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }

  bool entries_fit_field() const {
    for (const auto& s : a_)
      if (!s.fits(field_)) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& s : r.a_) s = -s;
    return r;
  }
  Matrix scaled(double s) const {
    Matrix r = *this;
    for (auto& q : r.a_) q = q.scaled(s);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (field_ != o.field_ || cols_ != o.rows_)
      throw std::invalid_argument("Matrix::operator*: shape/field mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Scalar& aik = (*this)(i, k);
        if (aik.norm2() == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix conj() const {
    Matrix r = *this;
    for (auto& s : r.a_) s = s.conj();
    return r;
  }
  // conjugate transpose; an involution with (xy)* = y* x*
  Matrix adjoint() const { return conj().transpose(); }

  double trace_re() const {
    double t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i).re();
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& s : a_) m = std::max(m, s.abs());
    return m;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (!same_shape(o)) throw std::invalid_argument("Matrix: shape/field mismatch");
  }

  Field field_ = Field::R;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// <x,y> = Re tr(x* y); reduces to the componentwise dot over the reals.
inline double inner(const Matrix& x, const Matrix& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("inner: shape/field mismatch");
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) s += component_dot(x(i, j), y(i, j));
  return s;
}

inline double norm(const Matrix& x) { return std::sqrt(inner(x, x)); }

inline double distance(const Matrix& x, const Matrix& y) { return norm(x - y); }

// Gauss-Jordan inverse with partial pivoting; row operations are left
// multiplications, valid over the division ring H as well.
inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square");
  const int n = m.rows();
  Matrix a = m;
  Matrix b = Matrix::identity(m.field(), n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = a(col, col).abs();
    for (int r = col + 1; r < n; ++r)
      if (a(r, col).abs() > best) { best = a(r, col).abs(); piv = r; }
    if (best == 0.0) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(b(piv, j), b(col, j));
      }
    const Scalar inv = a(col, col).inverse();
    for (int j = 0; j < n; ++j) {
      a(col, j) = inv * a(col, j);
      b(col, j) = inv * b(col, j);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar f = a(r, col);
      if (f.norm2() == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        b(r, j) -= f * b(col, j);
      }
    }
  }
  return b;
}

// determinant of a real matrix by LU with partial pivoting
inline double det_real(const Matrix& m) {
  if (m.field() != Field::R) throw std::invalid_argument("det_real: real matrices only");
  if (m.rows() != m.cols()) throw std::invalid_argument("det_real: non-square");
  const int n = m.rows();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j).re();
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[static_cast<std::size_t>(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r) * n + col]);
      if (v > best) { best = v; piv = r; }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(piv) * n + j],
                  a[static_cast<std::size_t>(col) * n + j]);
      det = -det;
    }
    const double p = a[static_cast<std::size_t>(col) * n + col];
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const double f = a[static_cast<std::size_t>(r) * n + col] / p;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(r) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
    }
  }
  return det;
}

// Pfaffian of a real skew-symmetric matrix by expansion along the first
// row; intended for the small block sizes used to tag components.
inline double pfaffian_real(const Matrix& m) {
  if (m.field() != Field::R) throw std::invalid_argument("pfaffian_real: real matrices only");
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("pfaffian_real: non-square");
  if (n % 2 != 0) return 0.0;
  if (n == 0) return 1.0;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  struct Rec {
    const Matrix& a;
    double run(std::vector<int>& live) const {
      const int k = static_cast<int>(live.size());
      if (k == 0) return 1.0;
      double sum = 0.0;
      double sign = 1.0;
      const int first = live[0];
      for (int j = 1; j < k; ++j) {
        const double entry = a(first, live[j]).re();
        if (entry != 0.0) {
          std::vector<int> rest;
          rest.reserve(k - 2);
          for (int t = 1; t < k; ++t)
            if (t != j) rest.push_back(live[t]);
          sum += sign * entry * run(rest);
        }
        sign = -sign;
      }
      return sum;
    }
  } rec{m};
  return rec.run(idx);
}

// embed a quaternion matrix as a complex matrix of doubled size,
// q = a+bi+cj+dk -> [[a+bi, c+di], [-c+di, a-bi]] per entry
inline Matrix complex_embedding(const Matrix& m) {
  Matrix r(Field::C, 2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j).c;
      r(2 * i, 2 * j) = Scalar(q[0], q[1]);
      r(2 * i, 2 * j + 1) = Scalar(q[2], q[3]);
      r(2 * i + 1, 2 * j) = Scalar(-q[2], q[3]);
      r(2 * i + 1, 2 * j + 1) = Scalar(q[0], -q[1]);
    }
  return r;
}

}  // namespace matmorse
