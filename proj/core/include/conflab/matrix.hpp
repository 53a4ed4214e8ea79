#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "conflab/errors.hpp"
#include "conflab/rational.hpp"

namespace conflab {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over a field T (Rational for exact work, double
/// for the floating fallbacks). Deliberately small: only what the Lie
/// algebra and classification code needs.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::Dimension, "ragged matrix initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const Vec<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix column(const Vec<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// E_{ij} with a single 1 (0-based indices).
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_col(j, columns[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> col(std::size_t j) const {
    Vec<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<T> row(std::size_t i) const {
    return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_col(std::size_t j, const Vec<T>& v) {
    if (v.size() != rows_) throw Error(ErrorKind::Dimension, "column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::Dimension, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error(ErrorKind::Dimension, "block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Matrix& operator/=(const T& s) {
    for (auto& x : data_) x /= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator/(Matrix a, const T& s) { return a /= s; }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::Dimension, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Field<T>::exact ? Field<T>::is_zero(aik) : aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  Vec<T> apply(const Vec<T>& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::Dimension, "matrix-vector shape mismatch");
    Vec<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!Field<T>::is_zero(x)) return false;
    return true;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !Field<T>::is_zero((*this)(i, j))) return false;
    return true;
  }

  Vec<T> diagonal_entries() const {
    Vec<T> d;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
    return d;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, Field<T>::magnitude(x));
    return m;
  }

  const std::vector<T>& data() const noexcept { return data_; }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::Dimension, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = Matrix<Rational>;
using RealMatrix = Matrix<double>;

inline RealMatrix to_real(const ExactMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

inline Vec<double> to_real(const Vec<Rational>& v) {
  Vec<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
  return r;
}

template <class T>
std::string format_matrix(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << format_matrix(m);
}

// ---------------------------------------------------------------------------
// Vector helpers

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  Vec<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <class T>
Vec<T> scale(const Vec<T>& a, const std::type_identity_t<T>& s) {
  Vec<T> r(a);
  for (auto& x : r) x *= s;
  return r;
}

template <class T>
bool is_zero_vec(const Vec<T>& a) {
  for (const auto& x : a)
    if (!Field<T>::is_zero(x)) return false;
  return true;
}

template <class T>
Vec<T> unit_vector(std::size_t n, std::size_t i) {
  Vec<T> v(n, T(0));
  v[i] = T(1);
  return v;
}

/// Bilinear form x^T S y.
template <class T>
T bilinear(const Matrix<T>& S, const Vec<T>& x, const Vec<T>& y) {
  return dot(x, S.apply(y));
}

// ---------------------------------------------------------------------------
// Row reduction and derived operations

template <class T>
struct Rref {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
};

template <class T>
Rref<T> rref(Matrix<T> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = a.rows();
    double best_mag = 0;
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (Field<T>::is_zero(a(i, c))) continue;
      if constexpr (Field<T>::exact) {
        best = i;
        break;
      } else {
        double mag = Field<T>::magnitude(a(i, c));
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
    }
    if (best == a.rows()) continue;
    if (best != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(r, j));
    T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || Field<T>::is_zero(a(i, c))) continue;
      T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    if constexpr (!Field<T>::exact) {
      for (std::size_t i = 0; i < a.rows(); ++i)
        if (i != r) a(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).pivots.size();
}

/// Columns form a basis of {x : A x = 0}; free-variable order is the
/// column order of A, which makes the basis deterministic.
template <class T>
Matrix<T> nullspace(const Matrix<T>& a) {
  auto [r, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(a.cols(), T(0));
    v[f] = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return Matrix<T>::from_columns(basis, a.cols());
}

/// Some solution of A x = b, or nullopt if inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Matrix<T>& a, const Vec<T>& b) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto [r, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec<T> x(a.cols(), T(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r(k, a.cols());
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.is_square()) throw Error(ErrorKind::Dimension, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix<T>::identity(n));
  auto [r, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorKind::Domain, "matrix is singular");
  return r.block(0, n, n, n);
}

template <class T>
T determinant(Matrix<T> a) {
  if (!a.is_square()) throw Error(ErrorKind::Dimension, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (!Field<T>::is_zero(a(i, c))) {
        p = i;
        break;
      }
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (Field<T>::is_zero(a(i, c))) continue;
      T f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Horizontal concatenation of column blocks with equal row counts.
template <class T>
Matrix<T> hstack(const std::vector<Matrix<T>>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows && b.cols() != 0) throw Error(ErrorKind::Dimension, "hstack row mismatch");
    cols += b.cols();
  }
  Matrix<T> m(rows, cols);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    if (b.cols() == 0) continue;
    m.set_block(0, c, b);
    c += b.cols();
  }
  return m;
}

template <class T>
Matrix<T> vstack(const std::vector<Matrix<T>>& blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols && b.rows() != 0) throw Error(ErrorKind::Dimension, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix<T> m(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    m.set_block(r, 0, b);
    r += b.rows();
  }
  return m;
}

/// A basis (as columns) of the column space, keeping the first independent
/// columns of the input in order.
template <class T>
Matrix<T> column_basis(const Matrix<T>& a) {
  auto piv = rref(a).pivots;
  std::vector<Vec<T>> cols;
  for (auto p : piv) cols.push_back(a.col(p));
  return Matrix<T>::from_columns(cols, a.rows());
}

/// Basis of the intersection of two column spaces.
template <class T>
Matrix<T> intersect(const Matrix<T>& u, const Matrix<T>& w) {
  if (u.cols() == 0 || w.cols() == 0) return Matrix<T>(u.rows(), 0);
  Matrix<T> both = hstack<T>({u, -w});
  Matrix<T> ns = nullspace(both);
  std::vector<Vec<T>> vecs;
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    Vec<T> coeffs(u.cols());
    for (std::size_t i = 0; i < u.cols(); ++i) coeffs[i] = ns(i, j);
    vecs.push_back(u.apply(coeffs));
  }
  return column_basis(Matrix<T>::from_columns(vecs, u.rows()));
}

template <class T>
Matrix<T> power(const Matrix<T>& a, unsigned k) {
  Matrix<T> r = Matrix<T>::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Smallest k with A^k = 0, or 0 if A is not nilpotent.
template <class T>
unsigned nilpotency_index(const Matrix<T>& a) {
  Matrix<T> p = Matrix<T>::identity(a.rows());
  for (unsigned k = 1; k <= a.rows(); ++k) {
    p = p * a;
    if (p.is_zero()) return k;
  }
  return 0;
}

}  // namespace conflab
