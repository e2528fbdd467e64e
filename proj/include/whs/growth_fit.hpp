#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "whs/energy.hpp"
#include "whs/errors.hpp"

namespace whs {

struct GrowthFit {
  std::string model;        // "polynomial" or "gevrey"
  double kappa = 0.0;       // slope of log amp vs log <xi>
  double r2_poly = 0.0;
  double theta = 0.0;       // exponent in exp(c <xi>^theta)
  double c_gevrey = 0.0;
  double r2_gevrey = 0.0;
  int rows_used = 0;
};

namespace detail {
struct LinFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinFit f;
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
  }
  double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  if (vx <= 0) return f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = (vy > 0) ? (cxy * cxy) / (vx * vy) : 1.0;
  return f;
}
}  // namespace detail

// Fit amp(<xi>) against the polynomial model <xi>^kappa and the Gevrey model
// exp(c <xi>^theta); only the top half of the log <xi> range enters the fit.
inline GrowthFit fit_growth(const std::vector<SweepRow>& table) {
  std::vector<double> brs, amps;
  for (const auto& r : table) {
    if (r.status != "ok" || !(r.amplification > 0.0)) continue;
    brs.push_back(std::sqrt(1.0 + r.xi_mag * r.xi_mag));
    amps.push_back(r.amplification);
  }
  if (brs.size() < 6) throw InsufficientRange();
  double lo = *std::min_element(brs.begin(), brs.end());
  double hi = *std::max_element(brs.begin(), brs.end());
  if (std::log10(hi / lo) < 2.0) throw InsufficientRange();

  double mid = std::sqrt(lo * hi);  // top half of the log range
  std::vector<double> fx, fy;
  for (size_t i = 0; i < brs.size(); ++i)
    if (brs[i] >= mid * (1.0 - 1e-12)) { fx.push_back(brs[i]); fy.push_back(std::log(amps[i])); }
  if (fx.size() < 3) { fx.clear(); fy.clear();
    for (size_t i = 0; i < brs.size(); ++i) { fx.push_back(brs[i]); fy.push_back(std::log(amps[i])); }
  }

  GrowthFit fit;
  fit.rows_used = static_cast<int>(fx.size());

  std::vector<double> logx(fx.size());
  for (size_t i = 0; i < fx.size(); ++i) logx[i] = std::log(fx[i]);
  detail::LinFit poly = detail::linear_fit(logx, fy);
  fit.kappa = poly.slope;
  fit.r2_poly = poly.r2;

  double best_r2 = -1.0;
  for (double theta = 0.05; theta <= 1.0 + 1e-9; theta += 0.01) {
    std::vector<double> px(fx.size());
    for (size_t i = 0; i < fx.size(); ++i) px[i] = std::pow(fx[i], theta);
    detail::LinFit g = detail::linear_fit(px, fy);
    if (g.r2 > best_r2) {
      best_r2 = g.r2;
      fit.theta = theta;
      fit.c_gevrey = g.slope;
      fit.r2_gevrey = g.r2;
    }
  }

  fit.model = (fit.r2_poly >= fit.r2_gevrey - 0.02) ? "polynomial" : "gevrey";
  return fit;
}

}  // namespace whs
