#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "whs/errors.hpp"

namespace whs {

// Adaptive Dormand-Prince 5(4) for y' = f(t, y), y complex. dense_hook is
// called at every accepted step with (t, y). max_step caps h (oscillation
// resolution); local error per step kept <= tol (mixed abs/rel).
class DormandPrince54 {
 public:
  using Rhs = std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>;
  using Hook = std::function<void(double, const Eigen::VectorXcd&)>;

  Eigen::VectorXcd integrate(const Rhs& f, double t0, double t1,
                             Eigen::VectorXcd y, double tol, double max_step,
                             const Hook& hook = {}) const {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static const double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9;

    double t = t0;
    double h = std::min(max_step, (t1 - t0) * 1e-2);
    if (hook) hook(t, y);
    Eigen::VectorXcd k1 = f(t, y);
    int rejects_in_row = 0;
    while (t < t1) {
      h = std::min({h, max_step, t1 - t});
      if (h < 1e-12 * (t1 - t0)) throw StiffnessFailure(t);
      Eigen::VectorXcd k2 = f(t + c2 * h, y + h * (a21 * k1));
      Eigen::VectorXcd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      Eigen::VectorXcd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      Eigen::VectorXcd k5 =
          f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      Eigen::VectorXcd k6 =
          f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      Eigen::VectorXcd k7 = f(t + h, y5);  // FSAL
      Eigen::VectorXcd err =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double scale = tol * (1.0 + std::max(y.norm(), y5.norm()));
      double errnorm = err.norm() / scale;
      if (!std::isfinite(errnorm) || !y5.allFinite()) throw NonFiniteState(t);
      if (errnorm <= 1.0) {
        t += h;
        y = std::move(y5);
        k1 = std::move(k7);
        if (hook) hook(t, y);
        rejects_in_row = 0;
      } else if (++rejects_in_row > 60) {
        throw StiffnessFailure(t);
      }
      double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
      h *= std::clamp(fac, 0.2, 5.0);
    }
    return y;
  }
};

}  // namespace whs
