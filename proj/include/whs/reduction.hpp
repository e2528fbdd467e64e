#pragma once

#include <Eigen/Dense>
#include <vector>

#include "whs/operator_poly.hpp"
#include "whs/symbol.hpp"
#include "whs/symmetriser.hpp"

namespace whs {

// Cofactor operator L(t, D_t, xi) = adj(tau I - A(t, xi)) with tau -> D_t,
// coefficients on the left of the D_t powers:
//   adj(tau I - A) = sum_{h=0}^{m-1} (A^h + c_1 A^{h-1} + ... + c_h I) tau^{m-1-h},
// the c_j being the characteristic polynomial coefficients of A(t, xi).
// Built from elementary symmetric functions via Faddeev-LeVerrier, never
// from eigenvalue branches.
inline OperatorPoly cofactor_operator(const SymbolMatrix& A, const Eigen::VectorXd& xi) {
  const int m = A.size();
  PolyMatrix Axi = A.at_xi(xi);
  std::vector<TimePoly> c = char_poly_coeffs(Axi);  // c[0]=1 ... c[m]
  OperatorPoly L(m, m - 1);
  PolyMatrix Ah = PolyMatrix::identity(m);  // Horner partial sum
  L.coeff(m - 1) = Ah;
  for (int h = 1; h <= m - 1; ++h) {
    Ah = Axi * Ah + PolyMatrix::identity(m) * c[h];
    L.coeff(m - 1 - h) = Ah;
  }
  return L;
}

// mu(t, D_t, xi) = det(tau I - A)|_{tau -> D_t} as a scalar operator, and
// the lower order terms
//   C = sum_h A_h sum_{q=1}^{m-1-h} binom(m-1-h, q) (D_t^q A) D_t^{m-1-h-q},
// so that L o (D_t I - A) = mu I - C.
inline std::pair<OperatorPoly, OperatorPoly> principal_and_lower(
    const SymbolMatrix& A, const Eigen::VectorXd& xi) {
  const int m = A.size();
  PolyMatrix Axi = A.at_xi(xi);
  std::vector<TimePoly> c = char_poly_coeffs(Axi);
  std::vector<TimePoly> mu_coeffs(m + 1);
  for (int k = 0; k <= m; ++k) mu_coeffs[k] = c[m - k];  // coeff of D_t^k
  OperatorPoly mu = OperatorPoly::scalar(m, mu_coeffs);

  OperatorPoly L = cofactor_operator(A, xi);
  OperatorPoly C(m, std::max(0, m - 2));
  for (int h = 0; h <= m - 1; ++h) {
    const PolyMatrix& Ah = L.coeff(m - 1 - h);
    PolyMatrix DqA = Axi;
    double binom = 1.0;
    Complex mi_pow(1.0, 0.0);
    for (int q = 1; q <= m - 1 - h; ++q) {
      binom *= double(m - 1 - h - q + 1) / double(q);
      DqA = DqA.derivative();
      mi_pow *= Complex(0.0, -1.0);
      if (DqA.coeff_norm() == 0.0) break;
      C.coeff(m - 1 - h - q) =
          C.coeff(m - 1 - h - q) + Ah * DqA * (mi_pow * binom);
    }
  }
  return {mu, C};
}

// The m^2 x m^2 block Sylvester pair (script A, script L) at fixed xi for
// the unknown U = {D_t^{j-1} <xi>^{m-j} u_i}, grouped by component i.
struct BlockSylvesterSystem {
  Eigen::VectorXd xi;
  int m = 0;
  PolyMatrix block;  // the repeated m x m first order block, <xi> factor included
  PolyMatrix lower;  // m^2 x m^2 order-0 lower order terms (script L)
  OperatorPoly L, mu, C;  // provenance

  int size() const { return m * m; }

  Eigen::MatrixXcd eval_A(double t) const {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(size(), size());
    Eigen::MatrixXcd b = block.eval(t);
    for (int i = 0; i < m; ++i) full.block(i * m, i * m, m, m) = b;
    return full;
  }
  Eigen::MatrixXcd eval_L(double t) const { return lower.eval(t); }
};

inline BlockSylvesterSystem block_sylvester_assemble(const SymbolMatrix& A,
                                                     const Eigen::VectorXd& xi) {
  const int m = A.size();
  const double br = angle_bracket(xi);
  BlockSylvesterSystem bs;
  bs.xi = xi;
  bs.m = m;
  bs.L = cofactor_operator(A, xi);
  auto [mu, C] = principal_and_lower(A, xi);
  bs.mu = mu;
  bs.C = C;

  // block = <xi> * companion of mu normalized to order 0:
  // superdiagonal 1, last row entries -b_{m-j+1} <xi>^{-(m-j+1)}
  std::vector<TimePoly> c = char_poly_coeffs(A.at_xi(xi));  // b_j = c[j]
  bs.block = PolyMatrix(m, m);
  for (int i = 0; i + 1 < m; ++i) bs.block(i, i + 1) = TimePoly(br);
  for (int j = 1; j <= m; ++j)
    bs.block(m - 1, j - 1) = -c[m - j + 1] * std::pow(br, -double(m - j + 1) + 1.0);

  // script L: block row i, last row only; the C-term enters the equation as
  // D_t U^(i)_m - [A part] - (C u)_i = 0 with
  // (C u)_i = sum_{k,l} (C_k)_{il} <xi>^{-(m-k-1)} U^(l)_{k+1}
  bs.lower = PolyMatrix(m * m, m * m);
  for (int i = 0; i < m; ++i) {
    int row = i * m + (m - 1);
    for (int k = 0; k <= C.order(); ++k)
      for (int l = 0; l < m; ++l) {
        int col = l * m + k;
        bs.lower(row, col) = -C.coeff(k)(i, l) * std::pow(br, -double(m - k - 1));
      }
  }
  return bs;
}

// smallest c with ||script L(t, xi)|| <= c max_k ||d_t^k A_0(t, xi)|| on the
// grid; +inf when A is t-constant but script L is not zero
inline double lower_order_bound_check(const BlockSylvesterSystem& bs, const SymbolMatrix& A,
                                      const std::vector<double>& t_grid,
                                      const Eigen::VectorXd& xi) {
  const int m = A.size();
  PolyMatrix A0 = A.normalized_at_xi(xi);
  std::vector<PolyMatrix> derivs;
  PolyMatrix d = A0;
  for (int k = 1; k <= m - 1; ++k) {
    d = d.derivative();
    derivs.push_back(d);
  }
  double c = 0.0;
  const double lscale = bs.lower.coeff_norm();
  for (double t : t_grid) {
    double lnorm = bs.eval_L(t).operatorNorm();
    if (lnorm <= 1e-12 * std::max(lscale, 1.0)) continue;
    double num = 0.0;
    for (const auto& dk : derivs) num = std::max(num, dk.eval(t).operatorNorm());
    if (num == 0.0) return std::numeric_limits<double>::infinity();
    c = std::max(c, lnorm / num);
  }
  return c;
}

}  // namespace whs
