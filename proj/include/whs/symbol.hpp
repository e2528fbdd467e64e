#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "whs/poly_matrix.hpp"

namespace whs {

inline double angle_bracket(const Eigen::VectorXd& xi) {
  return std::sqrt(1.0 + xi.squaredNorm());
}

// First order symbol A(t, xi) = sum_j A_j(t) xi_j with TimePoly entries,
// homogeneous of degree 1 in xi.
class SymbolMatrix {
 public:
  SymbolMatrix() : m_(0), n_(0) {}
  SymbolMatrix(int m, int n) : m_(m), n_(n), comp_(n, PolyMatrix(m, m)) {}

  int size() const { return m_; }
  int dim() const { return n_; }
  PolyMatrix& component(int j) { return comp_[j]; }
  const PolyMatrix& component(int j) const { return comp_[j]; }

  // A(t, xi) collapsed to a matrix of TimePoly at fixed xi
  PolyMatrix at_xi(const Eigen::VectorXd& xi) const {
    PolyMatrix a(m_, m_);
    for (int j = 0; j < n_; ++j)
      if (xi[j] != 0.0) a = a + comp_[j] * xi[j];
    return a;
  }

  // A_0(t, xi) = <xi>^{-1} A(t, xi)
  PolyMatrix normalized_at_xi(const Eigen::VectorXd& xi) const {
    return at_xi(xi) * (1.0 / angle_bracket(xi));
  }

  Eigen::MatrixXcd eval(double t, const Eigen::VectorXd& xi) const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m_, m_);
    for (int j = 0; j < n_; ++j)
      if (xi[j] != 0.0) a += comp_[j].eval(t) * xi[j];
    return a;
  }

  bool is_time_constant() const {
    for (const auto& c : comp_)
      if (c.derivative().coeff_norm() > 1e-13 * std::max(1.0, c.coeff_norm())) return false;
    return true;
  }

 private:
  int m_, n_;
  std::vector<PolyMatrix> comp_;
};

// Companion (Sylvester) symbol for a char poly tau^m - sum_j h_j tau^{m-j}
// given unnormalized last-row entries; convenience for 1-d tests.
inline SymbolMatrix companion_symbol_1d(const std::vector<TimePoly>& last_row_times_xi_pows) {
  // caller supplies A = xi * [[0,1,...],[...],[c_m ... c_1]] pattern directly
  const int m = static_cast<int>(last_row_times_xi_pows.size());
  SymbolMatrix A(m, 1);
  PolyMatrix& M = A.component(0);
  for (int i = 0; i + 1 < m; ++i) M(i, i + 1) = TimePoly(1.0);
  for (int j = 0; j < m; ++j) M(m - 1, j) = last_row_times_xi_pows[j];
  return A;
}

}  // namespace whs
