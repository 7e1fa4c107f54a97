#pragma once

#include <cmath>
#include <stdexcept>

namespace ginipop {

namespace detail {

// Continued fraction for the regularized incomplete beta, modified Lentz.
// Converges only for x <= (a+1)/(a+b+2); callers switch via the symmetry
// I_x(a,b) = 1 - I_{1-x}(b,a).
inline double incomplete_beta_cf(double x, double a, double b) {
  constexpr double tol = 1e-12;
  constexpr int max_iter = 300;
  constexpr double tiny = 1e-300;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double f = d;

  for (int m = 1; m <= max_iter; ++m) {
    const double dm = static_cast<double>(m);
    // even step
    double numer = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
    d = 1.0 + numer * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    f *= d * c;
    // odd step
    numer = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
    d = 1.0 + numer * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numer / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < tol) return f;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge in 300 iterations");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * detail::incomplete_beta_cf(x, a, b) / a;
  }
  return 1.0 - std::exp(log_front) * detail::incomplete_beta_cf(1.0 - x, b, a) / b;
}

/// Two-sided Student-t tail probability 2*P(T >= |t|) at `df` degrees of freedom.
///
/// Uses p = I_{df/(t^2+df)}(df/2, 1/2), which hits the two-sided tail directly.
inline double student_t_p_value(double t, int df) {
  if (df < 1) throw std::invalid_argument("student_t_p_value: degrees of freedom must be >= 1");
  if (t == 0.0) return 1.0;
  const double v = static_cast<double>(df);
  const double x = v / (t * t + v);
  return regularized_incomplete_beta(x, v / 2.0, 0.5);
}

}  // namespace ginipop
