#pragma once

#include <vector>

#include "whs/poly_matrix.hpp"

namespace whs {

// Polynomial in D_t = -i d/dt with matrix-valued TimePoly coefficients,
// sum_h M_h(t) D_t^h, coefficients kept on the LEFT of the D_t powers.
// Composition uses the Leibniz rule
//   D_t^q (M(t) v) = sum_r binom(q, r) (D_t^r M) D_t^{q-r} v,
// with D_t^r M = (-i)^r M^{(r)}.
class OperatorPoly {
 public:
  OperatorPoly() : dim_(0) {}
  OperatorPoly(int dim, int order)
      : dim_(dim), coeffs_(size_t(order) + 1, PolyMatrix(dim, dim)) {}

  static OperatorPoly identity(int dim) {
    OperatorPoly p(dim, 0);
    p.coeffs_[0] = PolyMatrix::identity(dim);
    return p;
  }

  // D_t as an operator on C^dim
  static OperatorPoly d_t(int dim) {
    OperatorPoly p(dim, 1);
    p.coeffs_[1] = PolyMatrix::identity(dim);
    return p;
  }

  // order-0 operator given by a matrix function
  static OperatorPoly multiplication(const PolyMatrix& m) {
    OperatorPoly p(m.rows(), 0);
    p.coeffs_[0] = m;
    return p;
  }

  // scalar operator sum_k c_k(t) D_t^k acting as c_k * I
  static OperatorPoly scalar(int dim, const std::vector<TimePoly>& c) {
    OperatorPoly p(dim, static_cast<int>(c.size()) - 1);
    for (size_t k = 0; k < c.size(); ++k)
      p.coeffs_[k] = PolyMatrix::identity(dim) * c[k];
    return p;
  }

  int dim() const { return dim_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  PolyMatrix& coeff(int h) { return coeffs_[h]; }
  const PolyMatrix& coeff(int h) const { return coeffs_[h]; }

  // largest h with a non-negligible coefficient (-1 when all vanish)
  int effective_order(double rel_tol = 1e-12) const {
    double scale = coeff_norm();
    for (int h = order(); h >= 0; --h)
      if (coeffs_[h].coeff_norm() > rel_tol * std::max(scale, 1e-300)) return h;
    return -1;
  }

  double coeff_norm() const {
    double n = 0.0;
    for (const auto& c : coeffs_) n = std::max(n, c.coeff_norm());
    return n;
  }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    if (dim_ == 0) { *this = o; return *this; }
    if (o.dim_ != dim_) throw DimensionMismatch("OperatorPoly sum dimension");
    if (coeffs_.size() < o.coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), PolyMatrix(dim_, dim_));
    for (size_t h = 0; h < o.coeffs_.size(); ++h) coeffs_[h] = coeffs_[h] + o.coeffs_[h];
    return *this;
  }
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { a += b; return a; }
  friend OperatorPoly operator-(const OperatorPoly& a, const OperatorPoly& b) {
    OperatorPoly r = a;
    OperatorPoly nb = b;
    for (auto& c : nb.coeffs_) c = c * Complex(-1.0);
    r += nb;
    return r;
  }

  friend OperatorPoly compose(const OperatorPoly& P, const OperatorPoly& Q) {
    if (P.dim_ != Q.dim_) throw DimensionMismatch("OperatorPoly compose dimension");
    OperatorPoly out(P.dim_, P.order() + Q.order());
    for (int h = 0; h <= P.order(); ++h) {
      if (P.coeffs_[h].coeff_norm() == 0.0) continue;
      for (int k = 0; k <= Q.order(); ++k) {
        // M_h D_t^h (N_k D_t^k) = sum_r binom(h,r) M_h (-i)^r N_k^{(r)} D_t^{h-r+k}
        PolyMatrix dN = Q.coeffs_[k];
        double binom = 1.0;
        Complex mi_pow(1.0, 0.0);
        for (int r = 0; r <= h; ++r) {
          if (r > 0) {
            binom *= double(h - r + 1) / double(r);
            dN = dN.derivative();
            mi_pow *= Complex(0.0, -1.0);
          }
          if (dN.coeff_norm() == 0.0) break;
          out.coeffs_[h - r + k] =
              out.coeffs_[h - r + k] + P.coeffs_[h] * dN * (mi_pow * binom);
        }
      }
    }
    return out;
  }

  // sup over coefficient index, entries, and sampled t of |P_h - Q_h|
  friend double op_residual(const OperatorPoly& P, const OperatorPoly& Q,
                            double t_lo = 0.0, double t_hi = 1.0, int samples = 33) {
    if (P.dim_ != Q.dim_) throw DimensionMismatch("op_residual dimension");
    const int maxord = std::max(P.order(), Q.order());
    double res = 0.0;
    for (int h = 0; h <= maxord; ++h) {
      PolyMatrix d(P.dim_, P.dim_);
      const bool hp = h <= P.order(), hq = h <= Q.order();
      if (hp && hq) d = P.coeffs_[h] - Q.coeffs_[h];
      else if (hp) d = P.coeffs_[h];
      else d = Q.coeffs_[h];
      for (int s = 0; s <= samples; ++s) {
        double t = t_lo + (t_hi - t_lo) * double(s) / double(samples);
        res = std::max(res, d.eval(t).cwiseAbs().maxCoeff());
      }
    }
    return res;
  }

 private:
  int dim_;
  std::vector<PolyMatrix> coeffs_;
};

}  // namespace whs
