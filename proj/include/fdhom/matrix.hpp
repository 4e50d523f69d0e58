#pragma once

// Dense exact matrices and the elimination primitives everything else is
// built on: rref, rank, kernels, solving, subspaces and quotients.

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdhom/field.hpp"

namespace fdhom {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class K>
using Vec = std::vector<K>;

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionMismatch("matrix data length does not match shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<K>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("ragged row list");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static Matrix column(const Vec<K>& v) { return Matrix(v.size(), 1, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<K>& data() const { return data_; }

  Vec<K> row(std::size_t r) const { return Vec<K>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  Vec<K> col(std::size_t c) const {
    Vec<K> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_col(std::size_t c, const Vec<K>& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
      }
    return p;
  }
  friend Vec<K> operator*(const Matrix& a, const Vec<K>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    Vec<K> out(a.rows_, K(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!v[k].is_zero()) out[i] += a(i, k) * v[k];
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const K& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c).to_string();
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row mismatch");
  Matrix<K> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
  Matrix<K> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

/// Block diagonal matrix.
template <class K>
Matrix<K> direct_sum(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <class K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class K>
bool is_zero_vec(const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <class K>
struct Rref {
  Matrix<K> form;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class K>
Rref<K> rref(Matrix<K> m) {
  Rref<K> out;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    K inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.form = std::move(m);
  return out;
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

/// Basis of ker(m) as the columns of the returned matrix (cols(m) x nullity).
/// Column j has a 1 in the j-th free position and zeros in the other free positions.
template <class K>
Matrix<K> nullspace(const Matrix<K>& m) {
  auto rr = rref(m);
  const std::size_t n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto p : rr.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<K> basis(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = K(1);
    for (std::size_t i = 0; i < rr.rank; ++i) basis(rr.pivots[i], j) = -rr.form(i, free[j]);
  }
  return basis;
}

/// A subspace of K^n stored by its RREF basis (one vector per row).
template <class K>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Span of the rows of `m`.
  static Subspace span_rows(const Matrix<K>& m) {
    auto rr = rref(m);
    Subspace s(m.cols());
    s.basis_ = rr.form.block(0, 0, rr.rank, m.cols());
    s.pivots_ = rr.pivots;
    return s;
  }
  static Subspace span_cols(const Matrix<K>& m) { return span_rows(m.transpose()); }
  static Subspace span(const std::vector<Vec<K>>& vs, std::size_t ambient) {
    return span_rows(Matrix<K>::from_rows(vs, ambient));
  }
  static Subspace full(std::size_t ambient) { return span_rows(Matrix<K>::identity(ambient)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<K>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduce v modulo the subspace (canonical representative of v + S).
  Vec<K> reduce(Vec<K> v) const {
    if (v.size() != ambient_) throw DimensionMismatch("vector does not live in ambient space");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      K f = v[pivots_[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!basis_(i, j).is_zero()) v[j] -= f * basis_(i, j);
    }
    return v;
  }
  bool contains(const Vec<K>& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& o) const {
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

/// Standard basis vectors completing the subspace basis to a basis of the ambient space.
template <class K>
std::vector<Vec<K>> quotient_basis(const Subspace<K>& sub) {
  std::vector<char> is_pivot(sub.ambient_dim(), 0);
  for (auto p : sub.pivots()) is_pivot[p] = 1;
  std::vector<Vec<K>> reps;
  for (std::size_t c = 0; c < sub.ambient_dim(); ++c) {
    if (is_pivot[c]) continue;
    Vec<K> e(sub.ambient_dim(), K(0));
    e[c] = K(1);
    reps.push_back(std::move(e));
  }
  return reps;
}

template <class K>
struct RightSolution {
  Matrix<K> particular;  // a.cols x b.cols
  Matrix<K> null_basis;  // columns span ker(a)
};

/// Solve a * x = b. Free variables of the particular solution are zero.
template <class K>
std::optional<RightSolution<K>> solve_right(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve_right: row counts differ");
  const std::size_t n = a.cols(), m = b.cols();
  auto rr = rref(hstack(a, b));
  // inconsistent iff a pivot falls in the b block
  for (auto p : rr.pivots)
    if (p >= n) return std::nullopt;
  Matrix<K> x(n, m);
  for (std::size_t i = 0; i < rr.rank; ++i)
    for (std::size_t j = 0; j < m; ++j) x(rr.pivots[i], j) = rr.form(i, n + j);
  return RightSolution<K>{std::move(x), nullspace(a)};
}

/// Particular solution of a * x = v, or nullopt.
template <class K>
std::optional<Vec<K>> solve_vec(const Matrix<K>& a, const Vec<K>& v) {
  auto s = solve_right(a, Matrix<K>::column(v));
  if (!s) return std::nullopt;
  return s->particular.col(0);
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto s = solve_right(m, Matrix<K>::identity(m.rows()));
  if (!s || s->null_basis.cols() != 0) return std::nullopt;
  return s->particular;
}

/// Precomputed solver for repeated systems a * x = v with the same a.
/// Requires nothing of a; returns nullopt for inconsistent right-hand sides.
template <class K>
class LinearSolver {
 public:
  LinearSolver() = default;
  explicit LinearSolver(const Matrix<K>& a) : rows_(a.rows()), cols_(a.cols()) {
    // Row-reduce [a | I]; the right block records the row operations.
    auto rr = rref(hstack(a, Matrix<K>::identity(a.rows())));
    for (auto p : rr.pivots) {
      if (p < cols_) pivots_.push_back(p);
    }
    ops_ = rr.form.block(0, cols_, rows_, rows_);
    reduced_ = rr.form.block(0, 0, rows_, cols_);
    rank_ = pivots_.size();
  }

  std::size_t rank() const { return rank_; }

  std::optional<Vec<K>> solve(const Vec<K>& v) const {
    if (v.size() != rows_) throw DimensionMismatch("LinearSolver: rhs length");
    Vec<K> t = ops_ * v;
    for (std::size_t i = rank_; i < rows_; ++i)
      if (!t[i].is_zero()) return std::nullopt;
    Vec<K> x(cols_, K(0));
    for (std::size_t i = 0; i < rank_; ++i) x[pivots_[i]] = t[i];
    return x;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, rank_ = 0;
  std::vector<std::size_t> pivots_;
  Matrix<K> ops_, reduced_;
};

}  // namespace fdhom
