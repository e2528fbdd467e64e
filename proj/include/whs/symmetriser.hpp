#pragma once

#include <Eigen/Dense>
#include <vector>

#include "whs/poly_matrix.hpp"
#include "whs/symbol.hpp"

namespace whs {

// Characteristic polynomial of the normalized symbol A_0(t, xi),
//   p(t, tau) = tau^m - h_1(t) tau^{m-1} - ... - h_m(t),
// entries exact in the TimePoly ring.
struct CharPolyPath {
  Eigen::VectorXd xi;
  std::vector<TimePoly> h;  // h[j-1] = h_j

  int m() const { return static_cast<int>(h.size()); }

  // coefficients of p in tau: pc[k] multiplies tau^k
  std::vector<TimePoly> tau_coeffs() const {
    const int mm = m();
    std::vector<TimePoly> pc(mm + 1);
    pc[mm] = TimePoly(1.0);
    for (int j = 1; j <= mm; ++j) pc[mm - j] = -h[j - 1];
    return pc;
  }

  Complex eval(double t, Complex tau) const {
    Complex v = 1.0;
    for (int j = 1; j <= m(); ++j) v = v * tau - h[j - 1].eval(t);
    return v;
  }
};

// Faddeev-LeVerrier in the polynomial ring: char poly of M as
// tau^m + c_1 tau^{m-1} + ... + c_m. Exact up to coefficient rounding.
inline std::vector<TimePoly> char_poly_coeffs(const PolyMatrix& M) {
  const int m = M.rows();
  std::vector<TimePoly> c(m + 1);
  c[0] = TimePoly(1.0);
  PolyMatrix N = M;
  for (int k = 1; k <= m; ++k) {
    if (k > 1) N = M * (N + PolyMatrix::identity(m) * c[k - 1]);
    c[k] = N.trace() * (-1.0 / double(k));
  }
  return c;  // c[k] = coefficient of tau^{m-k}
}

inline CharPolyPath char_poly_path(const SymbolMatrix& A, const Eigen::VectorXd& xi) {
  PolyMatrix A0 = A.normalized_at_xi(xi);
  std::vector<TimePoly> c = char_poly_coeffs(A0);
  CharPolyPath cp;
  cp.xi = xi;
  cp.h.resize(A.size());
  for (int j = 1; j <= A.size(); ++j) cp.h[j - 1] = -c[j];
  return cp;
}

// Standard symmetriser path at fixed xi: Q is the Bezoutian of p and
// d_tau p, minors are the trailing principal determinants, psi = d_2 of
// det(tau Q - d_t Q), hc the full generalised Hamilton-Cayley coefficients.
struct SymmetriserPath {
  Eigen::VectorXd xi;
  CharPolyPath cp;
  PolyMatrix Q;
  std::vector<TimePoly> minors;  // minors[j-1] = Delta_j; Delta = minors[m-1]
  TimePoly psi;
  bool psi_defined = false;  // false for m = 1
  std::vector<TimePoly> hc;  // d_0 ... d_m

  int m() const { return Q.rows(); }
  const TimePoly& delta() const { return minors.back(); }
};

// Bezoutian matrix of f and g (degree <= n-1 x n-1 for f of degree n):
//   (f(tau) g(sigma) - g(tau) f(sigma)) / (tau - sigma)
//     = sum_{i,j=0}^{n-1} B_ij tau^i sigma^j.
inline PolyMatrix bezoutian(const std::vector<TimePoly>& f, const std::vector<TimePoly>& g,
                            int n) {
  auto cf = [&](const std::vector<TimePoly>& p, int k) -> TimePoly {
    return (k >= 0 && k < static_cast<int>(p.size())) ? p[k] : TimePoly();
  };
  // numerator N_ij = f_i g_j - g_i f_j; division by (tau - sigma) via
  // B_ij = N_{i+1,j} + B_{i+1,j-1}
  PolyMatrix B(n, n);
  for (int i = n - 1; i >= 0; --i)
    for (int j = 0; j < n; ++j) {
      TimePoly v = cf(f, i + 1) * cf(g, j) - cf(g, i + 1) * cf(f, j);
      if (i + 1 < n && j - 1 >= 0) v += B(i + 1, j - 1);
      B(i, j) = v;
    }
  return B;
}

// polynomial in tau with TimePoly coefficients, for det(tau Q - d_t Q)
namespace detail {
using TauPoly = std::vector<TimePoly>;

inline TauPoly tau_mul(const TauPoly& a, const TauPoly& b) {
  TauPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}
inline TauPoly tau_add(TauPoly a, const TauPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}
inline TauPoly tau_neg(TauPoly a) {
  for (auto& p : a) p = -p;
  return a;
}

// determinant of a matrix of TauPoly via first-row expansion
inline TauPoly tau_det(const std::vector<std::vector<TauPoly>>& M) {
  const int n = static_cast<int>(M.size());
  if (n == 1) return M[0][0];
  TauPoly d{TimePoly()};
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<TauPoly>> minor(n - 1, std::vector<TauPoly>(n - 1));
    for (int r = 1; r < n; ++r)
      for (int c = 0, mc = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][mc++] = M[r][c];
      }
    TauPoly term = tau_mul(M[0][j], tau_det(minor));
    d = tau_add(d, (j % 2 == 0) ? term : tau_neg(term));
  }
  return d;
}
}  // namespace detail

// Generalised Hamilton-Cayley coefficients: det(tau Q - Qdot) =
// sum_j d_j tau^{m-j}.
inline std::vector<TimePoly> hamilton_cayley(const PolyMatrix& Q) {
  const int m = Q.rows();
  PolyMatrix Qdot = Q.derivative();
  std::vector<std::vector<detail::TauPoly>> M(m, std::vector<detail::TauPoly>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M[i][j] = detail::TauPoly{-Qdot(i, j), Q(i, j)};
  detail::TauPoly det = detail::tau_det(M);
  det.resize(m + 1);
  std::vector<TimePoly> d(m + 1);
  for (int j = 0; j <= m; ++j) d[j] = det[m - j];
  return d;
}

// psi = d_2 = (1/2) trace(d_t Q d_t(Q^co)); zero polynomial for m = 1
inline TimePoly check_function(const PolyMatrix& Q) {
  if (Q.rows() < 2) return TimePoly();
  PolyMatrix co = Q.cofactor_matrix();
  return (Q.derivative() * co.derivative()).trace() * 0.5;
}

inline SymmetriserPath build_symmetriser(const CharPolyPath& cp) {
  const int m = cp.m();
  SymmetriserPath sp;
  sp.xi = cp.xi;
  sp.cp = cp;
  std::vector<TimePoly> pc = cp.tau_coeffs();
  std::vector<TimePoly> dpc(m);
  for (int k = 1; k <= m; ++k) dpc[k - 1] = pc[k] * double(k);
  sp.Q = bezoutian(pc, dpc, m);
  sp.minors.resize(m);
  for (int j = 1; j <= m; ++j) sp.minors[j - 1] = sp.Q.trailing_principal(j).determinant();
  sp.psi = check_function(sp.Q);
  sp.psi_defined = m >= 2;
  sp.hc = hamilton_cayley(sp.Q);
  return sp;
}

inline SymmetriserPath build_symmetriser(const SymbolMatrix& A, const Eigen::VectorXd& xi) {
  return build_symmetriser(char_poly_path(A, xi));
}

}  // namespace whs
