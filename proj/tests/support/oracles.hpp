#pragma once

// Independent reference implementations used only by tests. Nothing here may
// call into the library; agreement between the two routes is the point.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Regularized lower incomplete gamma P(a, x), series for x < a + 1 and
// Lentz continued fraction otherwise.
inline double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("reg_lower_gamma: bad arguments");
  if (x == 0.0) return 0.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return std::exp(log_prefix) * sum;
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

// Mean and sd of Gamma(shape, rate) truncated to (0, hi].
inline double trunc_gamma_mean(double shape, double rate, double hi) {
  const double z = reg_lower_gamma(shape, rate * hi);
  return shape / rate * reg_lower_gamma(shape + 1.0, rate * hi) / z;
}

inline double trunc_gamma_sd(double shape, double rate, double hi) {
  const double z = reg_lower_gamma(shape, rate * hi);
  const double m1 = shape / rate * reg_lower_gamma(shape + 1.0, rate * hi) / z;
  const double m2 = shape * (shape + 1.0) / (rate * rate) *
                    reg_lower_gamma(shape + 2.0, rate * hi) / z;
  return std::sqrt(m2 - m1 * m1);
}

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double fa,
                           double b, double fb, double m, double fm, double whole,
                           double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) return left + right + delta / 15.0;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, depth);
}

// Direct quadrature of int_0^inf (1 - e^(-s v)) a / Gamma(1-kappa)
// v^(-kappa-1) e^(-tau v) dv through v = e^y. Supports kappa in [0, 1) with
// tau > 0, and the pure-stable tau = 0 branch for kappa not too small.
inline double levy_laplace_quadrature(double a, double kappa, double tau, double s,
                                      double tol = 1e-10) {
  if (s == 0.0) return 0.0;
  const double prefix = a / std::tgamma(1.0 - kappa);
  const auto g = [&](double y) {
    const double v = std::exp(y);
    const double one_minus = -std::expm1(-s * v);
    return one_minus * std::exp(-kappa * y) * std::exp(-tau * v);
  };
  const double inner_tol = tol / prefix;
  double y_lo = std::log(inner_tol * (1.0 - kappa) / s) / (1.0 - kappa);
  y_lo = std::min(y_lo, -25.0);
  double y_hi;
  if (tau > 0.0) {
    y_hi = std::log(50.0 / tau);
  } else {
    if (kappa < 0.05) throw std::domain_error("levy_laplace_quadrature: tau = 0 needs kappa away from 0");
    y_hi = -std::log(kappa * inner_tol) / kappa;
  }
  y_hi = std::max(y_hi, y_lo + 1.0);
  return prefix * adaptive_simpson(g, y_lo, y_hi, inner_tol);
}

// Kolmogorov-Smirnov statistic of a sample against Uniform(lo, hi).
inline double ks_uniform(std::vector<double> sample, double lo, double hi) {
  if (sample.empty()) throw std::domain_error("ks_uniform: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = std::clamp((sample[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

// Sample mean and sd (n - 1 divisor).
inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
