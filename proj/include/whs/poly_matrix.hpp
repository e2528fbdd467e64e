#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <vector>

#include "whs/errors.hpp"
#include "whs/time_poly.hpp"

namespace whs {

// Dense matrix with TimePoly entries. Small sizes only (m <= 4 for anything
// that takes a determinant), so determinants go by cofactor expansion in the
// polynomial ring: exact, division-free.
class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0) {}
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = TimePoly(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  TimePoly& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const TimePoly& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  Eigen::MatrixXcd eval(double t) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(t);
    return m;
  }

  Eigen::MatrixXd eval_real(double t) const { return eval(t).real(); }

  PolyMatrix derivative() const {
    PolyMatrix d(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) d(i, j) = (*this)(i, j).derivative();
    return d;
  }

  PolyMatrix derivative(int k) const {
    PolyMatrix d = *this;
    for (int i = 0; i < k; ++i) d = d.derivative();
    return d;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  TimePoly trace() const {
    TimePoly s;
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  double coeff_norm() const {
    double n = 0.0;
    for (const auto& p : e_) n = std::max(n, p.coeff_norm());
    return n;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("PolyMatrix product: " + std::to_string(a.cols_) +
                              " vs " + std::to_string(b.rows_));
    PolyMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const TimePoly& s) {
    PolyMatrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] * s;
    return r;
  }
  friend PolyMatrix operator*(const TimePoly& s, const PolyMatrix& a) { return a * s; }
  friend PolyMatrix operator*(const PolyMatrix& a, Complex s) { return a * TimePoly(s); }
  friend PolyMatrix operator*(Complex s, const PolyMatrix& a) { return a * TimePoly(s); }
  friend PolyMatrix operator*(const PolyMatrix& a, double s) { return a * TimePoly(s); }
  friend PolyMatrix operator*(double s, const PolyMatrix& a) { return a * TimePoly(s); }

  TimePoly determinant() const {
    assert(rows_ == cols_);
    return det_rec(*this);
  }

  // cofactor matrix: C_ij = (-1)^{i+j} det(minor_ij)
  PolyMatrix cofactor_matrix() const {
    assert(rows_ == cols_);
    const int n = rows_;
    PolyMatrix c(n, n);
    if (n == 1) { c(0, 0) = TimePoly(1.0); return c; }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        TimePoly d = det_rec(minor_of(i, j));
        c(i, j) = ((i + j) % 2 == 0) ? d : -d;
      }
    return c;
  }

  PolyMatrix minor_of(int i, int j) const {
    PolyMatrix m(rows_ - 1, cols_ - 1);
    for (int r = 0, mr = 0; r < rows_; ++r) {
      if (r == i) continue;
      for (int c = 0, mc = 0; c < cols_; ++c) {
        if (c == j) continue;
        m(mr, mc) = (*this)(r, c);
        ++mc;
      }
      ++mr;
    }
    return m;
  }

  // trailing principal j x j submatrix (drop the first n-j rows and columns)
  PolyMatrix trailing_principal(int j) const {
    const int off = rows_ - j;
    PolyMatrix m(j, j);
    for (int r = 0; r < j; ++r)
      for (int c = 0; c < j; ++c) m(r, c) = (*this)(off + r, off + c);
    return m;
  }

 private:
  static TimePoly det_rec(const PolyMatrix& m) {
    const int n = m.rows();
    if (n == 0) return TimePoly(1.0);
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    TimePoly d;
    for (int j = 0; j < n; ++j) {
      if (m(0, j).is_zero()) continue;
      TimePoly term = m(0, j) * det_rec(m.minor_of(0, j));
      d += (j % 2 == 0) ? term : -term;
    }
    return d;
  }

  int rows_, cols_;
  std::vector<TimePoly> e_;
};

}  // namespace whs
