#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>
#include <vector>

#include "whs/errors.hpp"
#include "whs/symbol.hpp"

namespace whs {

constexpr double kTolHyp = 1e-8;

enum class Verdict { Strict, Weak, NonHyperbolic };

struct HyperbolicityReport {
  Verdict verdict = Verdict::Strict;
  int r = 0;               // number of distinct roots (max cluster count)
  double max_imag = 0.0;   // largest |Im lambda| seen
  double witness_t = 0.0;  // grid point achieving max_imag
  Eigen::VectorXd witness_xi;

  std::string verdict_string() const {
    switch (verdict) {
      case Verdict::Strict: return "strict";
      case Verdict::Weak: return "weak(" + std::to_string(r) + ")";
      default: return "non-hyperbolic";
    }
  }
};

// Real sorted eigenvalues of A(t, xi); throws NonRealSpectrum when an
// imaginary part exceeds tol_hyp * (1 + |lambda|).
inline Eigen::VectorXd eigenvalues_at(const SymbolMatrix& A, double t,
                                      const Eigen::VectorXd& xi,
                                      double tol_hyp = kTolHyp,
                                      double abs_floor = 0.0) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A.eval(t, xi), false);
  Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::VectorXd re(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i].imag()) > tol_hyp * (1.0 + std::abs(ev[i])) + abs_floor) {
      NonRealSpectrum err(t, std::abs(ev[i].imag()));
      throw err;
    }
    re[i] = ev[i].real();
  }
  std::sort(re.data(), re.data() + re.size());
  return re;
}

// single-linkage clustering of sorted values: a gap < tol merges
inline int cluster_count(const Eigen::VectorXd& sorted_vals, double tol) {
  int c = sorted_vals.size() > 0 ? 1 : 0;
  for (int i = 1; i < sorted_vals.size(); ++i)
    if (sorted_vals[i] - sorted_vals[i - 1] >= tol) ++c;
  return c;
}

inline HyperbolicityReport hyperbolicity_scan(const SymbolMatrix& A,
                                              const std::vector<double>& t_grid,
                                              const std::vector<Eigen::VectorXd>& xi_grid,
                                              double tol_cluster_rel = 1e-6,
                                              double tol_hyp = kTolHyp) {
  HyperbolicityReport rep;
  rep.r = 0;
  bool all_distinct = true;
  // Defective (Jordan-block) eigenvalues perturb by ~ ||A|| eps^{1/m} under
  // QR, so the scan widens the non-real rejection floor by that scale.
  const double defect = 100.0 * std::pow(2.2e-16, 1.0 / double(std::max(A.size(), 1)));
  for (const auto& xi : xi_grid) {
    for (double t : t_grid) {
      Eigen::VectorXd ev;
      double abs_floor = defect * (1.0 + A.eval(t, xi).norm());
      try {
        ev = eigenvalues_at(A, t, xi, tol_hyp, abs_floor);
      } catch (const NonRealSpectrum& e) {
        rep.verdict = Verdict::NonHyperbolic;
        if (e.max_imag > rep.max_imag) {
          rep.max_imag = e.max_imag;
          rep.witness_t = t;
          rep.witness_xi = xi;
        }
        continue;
      }
      double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
      int c = cluster_count(ev, tol_cluster_rel * scale);
      rep.r = std::max(rep.r, c);
      if (c < A.size()) all_distinct = false;
    }
  }
  if (rep.verdict != Verdict::NonHyperbolic)
    rep.verdict = all_distinct ? Verdict::Strict : Verdict::Weak;
  if (rep.verdict == Verdict::Strict) rep.r = A.size();
  return rep;
}

inline std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * double(i) / double(n - 1);
  return g;
}

// Chebyshev-distributed points on [a, b] (default t-grid for condition scans)
inline std::vector<double> chebyshev_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * double(2 * i + 1) / double(2 * n));
    g[i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
  }
  std::sort(g.begin(), g.end());
  return g;
}

}  // namespace whs
