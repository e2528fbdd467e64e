#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <vector>

#include "whs/errors.hpp"
#include "whs/poly_matrix.hpp"
#include "whs/symmetriser.hpp"

namespace whs {

constexpr double kZeroPolyRel = 1e-9;
constexpr double kTildeFloorRel = 1e-14;
constexpr double kConstInfinity = std::numeric_limits<double>::infinity();

inline bool delta_identically_zero(const TimePoly& delta, double scale = 1.0) {
  return delta.coeff_norm() <= kZeroPolyRel * std::max(scale, 1.0);
}

// Delta~(t) = Delta(t) + (d_t Delta(t))^2 / Delta(t), with the analytic
// limit at even-order zeros of Delta: at a zero of order 2k the quotient
// tends to 4 k^2 a t^{2k-2} (a the leading Taylor coefficient), so the
// limit is 4a for k = 1 and 0 for k >= 2.
inline double delta_tilde(const TimePoly& delta, double t, double sup_norm,
                          double floor_rel = kTildeFloorRel) {
  if (delta.is_zero(kZeroPolyRel, std::max(sup_norm, 1.0)) || sup_norm == 0.0)
    throw IdenticallyZeroDelta();
  const double d = delta.eval(t).real();
  const double dd = delta.derivative().eval(t).real();
  const double floor = floor_rel * sup_norm;
  if (std::abs(d) <= floor) {
    int k0 = delta.vanishing_order(t);
    if (k0 >= 2 && k0 % 2 == 0) {
      if (k0 == 2) return d + 4.0 * delta.taylor_coeff(t, 2).real();
      return d;  // order >= 4: quotient limit is 0
    }
  }
  return d + dd * dd / std::max(d, floor);
}

struct ConditionReport {
  double C_GR1m = 0.0;
  double C_GRLevi = 0.0;
  double argmax_t_GR1m = 0.0;
  double argmax_t_GRLevi = 0.0;
  int grid_points = 0;
  bool GR1m_unbounded = false;
  bool GRLevi_unbounded = false;
};

constexpr double kConstCap = 1e12;  // ratio above this flags +infinity

// sup over the grid of |psi| / Delta~   (hypothesis GR1m best constant)
inline double check_GR1m(const SymmetriserPath& sp, const std::vector<double>& t_grid,
                         double* argmax_t = nullptr) {
  const TimePoly& delta = sp.delta();
  double a = t_grid.front(), b = t_grid.back();
  double sup = delta.max_abs_on(a, b);
  if (delta_identically_zero(delta) || sup == 0.0) throw IdenticallyZeroDelta();
  double c = 0.0, at = a;
  double psi_scale = sp.psi.coeff_norm();
  for (double t : t_grid) {
    double psi = std::abs(sp.psi.eval(t));
    if (psi <= 1e-13 * std::max(psi_scale, 1.0)) continue;
    double dt = delta_tilde(delta, t, sup);
    double ratio = (dt > 0.0) ? psi / dt : kConstInfinity;
    if (ratio > c) { c = ratio; at = t; }
  }
  if (argmax_t) *argmax_t = at;
  return c > kConstCap ? kConstInfinity : c;
}

// sup over the grid of max_k ||d_t^k A_0|| / (Delta + |d_t Delta|)
inline double check_GRLevi(const PolyMatrix& A0, const SymmetriserPath& sp,
                           const std::vector<double>& t_grid, int k_max = -1,
                           double* argmax_t = nullptr) {
  const TimePoly& delta = sp.delta();
  if (delta_identically_zero(delta)) throw IdenticallyZeroDelta();
  const int m = A0.rows();
  if (k_max < 0) k_max = m - 1;
  std::vector<PolyMatrix> derivs;
  PolyMatrix d = A0;
  for (int k = 1; k <= k_max; ++k) {
    d = d.derivative();
    derivs.push_back(d);
  }
  TimePoly ddelta = delta.derivative();
  double scale = 0.0;
  for (const auto& dk : derivs) scale = std::max(scale, dk.coeff_norm());
  double c = 0.0, at = t_grid.front();
  for (double t : t_grid) {
    double num = 0.0;
    for (const auto& dk : derivs)
      num = std::max(num, dk.eval(t).operatorNorm());
    if (num <= 1e-13 * std::max(scale, 1.0)) continue;
    double den = delta.eval(t).real() + std::abs(ddelta.eval(t).real());
    double ratio = (den > 0.0) ? num / den : kConstInfinity;
    if (ratio > c) { c = ratio; at = t; }
  }
  if (argmax_t) *argmax_t = at;
  return c > kConstCap ? kConstInfinity : c;
}

struct BadSet {
  Eigen::VectorXd xi;
  double eps = 0.0;
  double threshold = 0.0;
  std::vector<std::pair<double, double>> intervals;  // disjoint, sorted, clipped

  double total_length() const {
    double s = 0.0;
    for (const auto& iv : intervals) s += iv.second - iv.first;
    return s;
  }
  bool contains(double t) const {
    for (const auto& iv : intervals)
      if (t >= iv.first && t <= iv.second) return true;
    return false;
  }
};

// real roots of a TimePoly via the companion matrix of its real part
inline std::vector<double> real_roots(const TimePoly& p, double imag_tol = 1e-7) {
  TimePoly q = p;
  q.trim(1e-12);
  const int n = q.degree();
  std::vector<double> roots;
  if (n < 1) return roots;
  // companion matrix: subdiagonal ones, -a_i/a_n down the last column
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  Complex lead = q.coeff(n);
  for (int i = 0; i < n; ++i) C(i, n - 1) = -(q.coeff(i) / lead).real();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    Complex r = es.eigenvalues()[i];
    if (std::abs(r.imag()) <= imag_tol * scale) roots.push_back(r.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Sub-level set { t in [a,b] : Delta(t) < c1 eps^{2q} ||Delta||_inf[a,b] },
// from root isolation of Delta - threshold; intervals merged and clipped.
inline BadSet bad_set_detect(const TimePoly& delta, double eps, double c1, int q,
                             double a, double b, const Eigen::VectorXd& xi = {}) {
  double sup = delta.max_abs_on(a, b, 4096);
  if (delta_identically_zero(delta) || sup == 0.0) throw IdenticallyZeroDelta();
  BadSet bs;
  bs.xi = xi;
  bs.eps = eps;
  bs.threshold = c1 * std::pow(eps, 2.0 * q) * sup;

  TimePoly shifted = delta - TimePoly(bs.threshold);
  std::vector<double> cuts = real_roots(shifted);
  std::vector<double> pts{a};
  for (double r : cuts)
    if (r > a && r < b) pts.push_back(r);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double mid = 0.5 * (pts[i] + pts[i + 1]);
    if (delta.eval(mid).real() < bs.threshold) {
      if (!bs.intervals.empty() && std::abs(bs.intervals.back().second - pts[i]) < 1e-12)
        bs.intervals.back().second = pts[i + 1];
      else
        bs.intervals.emplace_back(pts[i], pts[i + 1]);
    }
  }
  return bs;
}

// integral of |d_t Delta| / Delta over [a,b] minus the bad set (composite
// Simpson per complement interval)
inline double log_derivative_integral(const TimePoly& delta, const BadSet& bs,
                                      double a, double b, int npts = 20001) {
  TimePoly ddelta = delta.derivative();
  std::vector<std::pair<double, double>> comp;
  double lo = a;
  for (const auto& iv : bs.intervals) {
    if (iv.first > lo) comp.emplace_back(lo, iv.first);
    lo = std::max(lo, iv.second);
  }
  if (lo < b) comp.emplace_back(lo, b);
  double total = 0.0;
  for (const auto& iv : comp) {
    int n = std::max(32, int(npts * (iv.second - iv.first) / (b - a)));
    if (n % 2) ++n;
    double h = (iv.second - iv.first) / n, s = 0.0;
    for (int i = 0; i <= n; ++i) {
      double t = iv.first + h * i;
      double f = std::abs(ddelta.eval(t).real()) / std::max(delta.eval(t).real(), 1e-300);
      double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * f;
    }
    total += s * h / 3.0;
  }
  return total;
}

}  // namespace whs
