#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorcurv/scalar.hpp"

namespace lorcurv {

// Dense matrix over a field S. All elimination routines pivot through
// scalar_traits<S>, so the same code runs exactly over Rat and with
// tolerance-aware pivoting over Fp.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c, S(0)) {}
  Matrix(std::initializer_list<std::initializer_list<S>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  S& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  Matrix& operator+=(const Matrix& o) {
    check_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { a += b; return a; }
  friend Matrix operator-(Matrix a, const Matrix& b) { a -= b; return a; }
  friend Matrix operator*(Matrix a, const S& s) { a *= s; return a; }
  friend Matrix operator*(const S& s, Matrix a) { a *= s; return a; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
      if (!(a.a_[i] == b.a_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero_matrix() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  S trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    S t(0);
    for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<S> col(size_t j) const {
    std::vector<S> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply shape mismatch");
    std::vector<S> r(rows_, S(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  // Row echelon reduction in place; returns rank and records pivot columns.
  // Destructive; callers work on a copy.
  size_t echelon(std::vector<size_t>* pivot_cols = nullptr) {
    size_t rank = 0;
    for (size_t col = 0; col < cols_ && rank < rows_; ++col) {
      size_t best = rows_;
      for (size_t i = rank; i < rows_; ++i) {
        if (is_zero((*this)(i, col))) continue;
        if (best == rows_ || scalar_traits<S>::better_pivot((*this)(i, col), (*this)(best, col)))
          best = i;
      }
      if (best == rows_) continue;
      swap_rows(rank, best);
      S inv = S(1) / (*this)(rank, col);
      for (size_t j = col; j < cols_; ++j) (*this)(rank, j) *= inv;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == rank) continue;
        S f = (*this)(i, col);
        if (is_zero(f)) continue;
        for (size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(rank, j);
      }
      if (pivot_cols) pivot_cols->push_back(col);
      ++rank;
    }
    // Clean rows below rank so downstream reads see exact zeros.
    for (size_t i = rank; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = S(0);
    return rank;
  }

  size_t rank() const {
    Matrix m = *this;
    return m.echelon();
  }

  S det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    Matrix m = *this;
    S d(1);
    for (size_t col = 0; col < m.cols_; ++col) {
      size_t best = m.rows_;
      for (size_t i = col; i < m.rows_; ++i) {
        if (is_zero(m(i, col))) continue;
        if (best == m.rows_ || scalar_traits<S>::better_pivot(m(i, col), m(best, col))) best = i;
      }
      if (best == m.rows_) return S(0);
      if (best != col) {
        m.swap_rows(col, best);
        d = -d;
      }
      d *= m(col, col);
      S inv = S(1) / m(col, col);
      for (size_t i = col + 1; i < m.rows_; ++i) {
        S f = m(i, col) * inv;
        if (is_zero(f)) continue;
        for (size_t j = col; j < m.cols_; ++j) m(i, j) -= f * m(col, j);
      }
    }
    return d;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    Matrix aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = S(1);
    }
    std::vector<size_t> piv;
    aug.echelon(&piv);
    // Nonsingular left block iff the first n pivots are columns 0..n-1.
    if (piv.size() < rows_ || piv[rows_ - 1] != rows_ - 1)
      throw std::domain_error("singular matrix");
    Matrix inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  // Basis of the right kernel, one column per basis vector.
  Matrix nullspace() const {
    Matrix m = *this;
    std::vector<size_t> piv;
    m.echelon(&piv);
    std::vector<bool> is_piv(cols_, false);
    for (size_t c : piv) is_piv[c] = true;
    size_t nfree = cols_ - piv.size();
    Matrix basis(cols_, nfree);
    size_t k = 0;
    for (size_t fc = 0; fc < cols_; ++fc) {
      if (is_piv[fc]) continue;
      basis(fc, k) = S(1);
      for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -m(r, fc);
      ++k;
    }
    return basis;
  }

  // Solves A x = b; nullopt when inconsistent. Underdetermined systems get
  // the particular solution with free variables set to zero.
  std::optional<std::vector<S>> solve(const std::vector<S>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("solve shape mismatch");
    Matrix aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    std::vector<size_t> piv;
    size_t rank = aug.echelon(&piv);
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<S> x(cols_, S(0));
    for (size_t r = 0; r < rank; ++r) x[piv[r]] = aug(r, cols_);
    return x;
  }

  // Monic characteristic polynomial, coefficients ascending in x.
  // Faddeev-LeVerrier; needs only field arithmetic and division by integers.
  std::vector<S> char_poly() const {
    if (rows_ != cols_) throw std::invalid_argument("char_poly of non-square matrix");
    size_t n = rows_;
    std::vector<S> c(n + 1, S(0));
    c[n] = S(1);
    Matrix M = Matrix::identity(n);
    for (size_t k = 1; k <= n; ++k) {
      M = (*this) * M;
      S ck = -(M.trace() / S(static_cast<int>(k)));
      c[n - k] = ck;
      for (size_t i = 0; i < n; ++i) M(i, i) += ck;
    }
    return c;
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < rows_; ++i) {
      s += i ? "\n[" : "[";
      for (size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += scalar_traits<S>::to_string((*this)(i, j));
      }
      s += "]";
    }
    return s;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (!same_shape(o)) throw std::invalid_argument("matrix shape mismatch");
  }
  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  size_t rows_, cols_;
  std::vector<S> a_;
};

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

// Dimension of the span of a set of equally-shaped matrices, viewed as
// vectors. Used for holonomy-style span computations.
template <class S>
size_t span_dim(const std::vector<Matrix<S>>& mats) {
  if (mats.empty()) return 0;
  size_t r = mats[0].rows(), c = mats[0].cols();
  Matrix<S> stack(mats.size(), r * c);
  for (size_t m = 0; m < mats.size(); ++m)
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) stack(m, i * c + j) = mats[m](i, j);
  return stack.rank();
}

// True when m lies in the span of basis (all same shape).
template <class S>
bool in_span(const Matrix<S>& m, const std::vector<Matrix<S>>& basis) {
  std::vector<Matrix<S>> with = basis;
  with.push_back(m);
  return span_dim(with) == span_dim(basis);
}

// Greedily extends an independent subset spanning the same space.
template <class S>
std::vector<Matrix<S>> independent_subset(const std::vector<Matrix<S>>& mats) {
  std::vector<Matrix<S>> basis;
  size_t d = 0;
  for (const auto& m : mats) {
    if (m.is_zero_matrix()) continue;
    basis.push_back(m);
    size_t nd = span_dim(basis);
    if (nd == d)
      basis.pop_back();
    else
      d = nd;
  }
  return basis;
}

}  // namespace lorcurv
