#pragma once

// Dense exact matrices over any of the scalar types in this library (field
// elements, polynomials, rational functions). Division-based routines
// (inverse, kernel, rank) only instantiate for scalars with operator/.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cremona/ratfunc.hpp"

namespace cremona {

inline FElem zero_like(const FElem& x) { return x.field()->zero(); }
inline FElem one_like(const FElem& x) { return x.field()->one(); }
inline Poly zero_like(const Poly& p) { return Poly::zero(p.field(), p.vars()); }
inline Poly one_like(const Poly& p) {
  return Poly::constant(p.field(), p.vars(), p.field()->one());
}
inline RatFunc zero_like(const RatFunc& f) { return RatFunc::zero(f.field(), f.vars()); }
inline RatFunc one_like(const RatFunc& f) { return RatFunc::one(f.field(), f.vars()); }

template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c, const T& fill) : r_(r), c_(c), d_(r * c, fill) {}

  static Mat from(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix");
    Mat m(rows.size(), rows[0].size(), rows[0][0]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat identity(std::size_t n, const T& exemplar) {
    Mat m(n, n, zero_like(exemplar));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one_like(exemplar);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& at(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  bool operator==(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (!(d_[i] == o.d_[i])) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const {
    check_shape(o);
    Mat m = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] + o.d_[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    check_shape(o);
    Mat m = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] - o.d_[i];
    return m;
  }
  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
    Mat m(r_, o.c_, zero_like(d_[0]));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k)
        for (std::size_t j = 0; j < o.c_; ++j) m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
    return m;
  }
  Mat scale(const T& s) const {
    Mat m = *this;
    for (auto& x : m.d_) x = x * s;
    return m;
  }

  Mat transpose() const {
    Mat m(c_, r_, d_[0]);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  std::vector<T> mul_vec(const std::vector<T>& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(r_, zero_like(d_[0]));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] = out[i] + at(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!x.is_zero()) return false;
    return true;
  }

  // Cofactor expansion; fine for the small sizes used here.
  T det() const {
    if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
    if (r_ == 1) return at(0, 0);
    T acc = zero_like(d_[0]);
    int sign = 1;
    for (std::size_t j = 0; j < c_; ++j, sign = -sign) {
      Mat minor(r_ - 1, c_ - 1, d_[0]);
      for (std::size_t i = 1; i < r_; ++i) {
        std::size_t cc = 0;
        for (std::size_t k = 0; k < c_; ++k) {
          if (k == j) continue;
          minor.at(i - 1, cc++) = at(i, k);
        }
      }
      T term = at(0, j) * minor.det();
      acc = sign > 0 ? acc + term : acc - term;
    }
    return acc;
  }

  // Reduced row echelon form; returns pivot column indices. Needs division.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t p = row;
      while (p < r_ && at(p, col).is_zero()) ++p;
      if (p == r_) continue;
      for (std::size_t j = 0; j < c_; ++j) std::swap(at(p, j), at(row, j));
      T inv = one_like(d_[0]) / at(row, col);
      for (std::size_t j = 0; j < c_; ++j) at(row, j) = at(row, j) * inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        T f = at(i, col);
        for (std::size_t j = 0; j < c_; ++j) at(i, j) = at(i, j) - f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Mat m = *this;
    return m.rref().size();
  }

  // Basis of the right kernel.
  std::vector<std::vector<T>> kernel() const {
    Mat m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < c_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<T> v(c_, zero_like(d_[0]));
      v[free] = one_like(d_[0]);
      for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        v[pivots[pi]] = zero_like(d_[0]) - m.at(pi, free);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Mat inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    Mat aug(r_, 2 * c_, zero_like(d_[0]));
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, c_ + i) = one_like(d_[0]);
    }
    auto pivots = aug.rref();
    if (pivots.size() < r_ || pivots[r_ - 1] != r_ - 1)
      throw std::invalid_argument("matrix is singular");
    Mat inv(r_, c_, d_[0]);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
    return inv;
  }

 private:
  void check_shape(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

// Projective equality: M = cN for some nonzero scalar c, decided by cross
// products only (no division, so it works verbatim over polynomial entries).
template <class T>
bool pgl_equal(const Mat<T>& A, const Mat<T>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
  const bool az = A.is_zero(), bz = B.is_zero();
  if (az || bz) return az && bz;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t k = 0; k < A.rows(); ++k)
        for (std::size_t l = 0; l < A.cols(); ++l) {
          T lhs = A.at(i, j) * B.at(k, l);
          T rhs = A.at(k, l) * B.at(i, j);
          if (!(lhs == rhs)) return false;
        }
  return true;
}

}  // namespace cremona
