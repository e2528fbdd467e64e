#pragma once

#include <complex>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace whs {

using Complex = std::complex<double>;

// Exact univariate polynomial in t. coeffs[k] multiplies t^k; an empty
// coefficient list is the zero polynomial (degree -1). Closed under
// +, -, *, d/dt; evaluation by Horner.
class TimePoly {
 public:
  TimePoly() = default;
  TimePoly(double c) { if (c != 0.0) c_ = {Complex(c)}; }
  TimePoly(Complex c) { if (c != Complex(0)) c_ = {c}; }
  explicit TimePoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  TimePoly(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

  static TimePoly variable() { return TimePoly({Complex(0), Complex(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0);
  }

  // max |coeff|
  double coeff_norm() const {
    double n = 0.0;
    for (const auto& c : c_) n = std::max(n, std::abs(c));
    return n;
  }

  // "identically zero" up to floating composition noise at a given scale
  bool is_zero(double tol, double scale) const {
    return coeff_norm() <= tol * std::max(scale, 1e-300);
  }

  Complex eval(Complex t) const {
    Complex v = 0;
    for (int k = degree(); k >= 0; --k) v = v * t + c_[k];
    return v;
  }
  Complex eval(double t) const { return eval(Complex(t)); }

  TimePoly derivative() const {
    if (c_.size() <= 1) return TimePoly();
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
    return TimePoly(std::move(d));
  }

  TimePoly derivative(int k) const {
    TimePoly p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p;
  }

  // ∂_t^k p evaluated at t
  Complex eval_deriv(double t, int k) const { return derivative(k).eval(t); }

  TimePoly& operator+=(const TimePoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Complex(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  TimePoly& operator-=(const TimePoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Complex(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  TimePoly& operator*=(Complex s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend TimePoly operator+(TimePoly a, const TimePoly& b) { a += b; return a; }
  friend TimePoly operator-(TimePoly a, const TimePoly& b) { a -= b; return a; }
  friend TimePoly operator-(const TimePoly& a) { TimePoly r = a; r *= Complex(-1); return r; }
  friend TimePoly operator*(TimePoly a, Complex s) { a *= s; return a; }
  friend TimePoly operator*(Complex s, TimePoly a) { a *= s; return a; }
  friend TimePoly operator*(TimePoly a, double s) { a *= Complex(s); return a; }
  friend TimePoly operator*(double s, TimePoly a) { a *= Complex(s); return a; }

  friend TimePoly operator*(const TimePoly& a, const TimePoly& b) {
    if (a.is_zero() || b.is_zero()) return TimePoly();
    std::vector<Complex> r(a.c_.size() + b.c_.size() - 1, Complex(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return TimePoly(std::move(r));
  }

  // drop trailing coefficients below trim_tol relative to the largest one
  void trim(double rel_tol = 1e-13) {
    double n = 0.0;
    for (const auto& c : c_) n = std::max(n, std::abs(c));
    if (n == 0.0) { c_.clear(); return; }
    while (!c_.empty() && std::abs(c_.back()) <= rel_tol * n) c_.pop_back();
  }

  // smallest k with a non-negligible Taylor coefficient of (t - t0)^k;
  // returns -1 for (numerically) identically zero
  int vanishing_order(double t0, double rel_tol = 1e-9) const {
    double scale = coeff_norm() * std::max(1.0, std::pow(std::abs(t0) + 1.0, double(degree())));
    if (scale == 0.0) return -1;
    TimePoly d = *this;
    double fact = 1.0;
    for (int k = 0; k <= degree(); ++k) {
      if (std::abs(d.eval(t0)) / fact > rel_tol * scale) return k;
      d = d.derivative();
      fact *= double(k + 1);
    }
    return -1;
  }

  // Taylor coefficient p^(k)(t0)/k!
  Complex taylor_coeff(double t0, int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= double(i);
    return eval_deriv(t0, k) / fact;
  }

  double max_abs_on(double a, double b, int npts = 1024) const {
    double m = 0.0;
    for (int i = 0; i <= npts; ++i) {
      double t = a + (b - a) * double(i) / double(npts);
      m = std::max(m, std::abs(eval(t)));
    }
    return m;
  }

 private:
  std::vector<Complex> c_;
};

}  // namespace whs
