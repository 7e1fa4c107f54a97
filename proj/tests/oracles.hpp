// Test-only oracles, deliberately independent of the library's
// implementation paths: pairwise-difference Gini, exhaustive subsample
// enumeration, a normal-equations solver, and tail-probability quadrature.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Gini via the mean-absolute-difference formula sum|xi-xj| / (2 n^2 mean).
inline double pairwise_gini(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (double v : x) total += v;
  if (!(total > 0.0)) throw std::domain_error("pairwise_gini: zero total");
  double abs_diff = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) abs_diff += std::fabs(x[i] - x[j]);
  const double mean = total / static_cast<double>(n);
  return abs_diff / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
}

/// Expected Gini over all C(n,k) subsets; draws with zero total income have
/// no Gini and contribute zero.
inline double enumerated_subsample_expectation(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k > n) throw std::invalid_argument("enumerated_subsample_expectation: bad k");
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  double sum = 0.0;
  std::size_t count = 0;
  while (true) {
    std::vector<double> subset(k);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      subset[i] = x[idx[i]];
      total += subset[i];
    }
    if (total > 0.0) sum += pairwise_gini(subset);
    ++count;
    // next combination in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return sum / static_cast<double>(count);
}

/// Plain normal-equations least squares with explicit Gauss-Jordan inverse.
inline std::vector<double> normal_equations_fit(const std::vector<std::vector<double>>& x,
                                                const std::vector<double>& y) {
  const std::size_t n = x.size();
  const std::size_t k = x.empty() ? 0 : x[0].size();
  std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
  std::vector<double> b(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      b[p] += x[i][p] * y[i];
      for (std::size_t q = 0; q < k; ++q) a[p][q] += x[i][p] * x[i][q];
    }
  }
  // Gauss-Jordan with partial pivoting
  std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    if (d == 0.0) throw std::domain_error("normal_equations_fit: singular system");
    for (std::size_t c = 0; c < k; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t c = 0; c < k; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  std::vector<double> beta(k, 0.0);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) beta[p] += inv[p][q] * b[q];
  return beta;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace detail

/// Two-sided t-distribution tail via quadrature of the density from |t| to
/// infinity (substitution x = |t| + u/(1-u)).
inline double quadrature_t_p_value(double t, int df) {
  const double v = static_cast<double>(df);
  const double log_norm =
      std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) - 0.5 * std::log(v * std::numbers::pi);
  const auto pdf = [v, log_norm](double x) {
    return std::exp(log_norm - (v + 1.0) / 2.0 * std::log1p(x * x / v));
  };
  const double lo = std::fabs(t);
  const auto integrand = [&](double u) {
    const double denom = 1.0 - u;
    const double x = lo + u / denom;
    return pdf(x) / (denom * denom);
  };
  const double tail = detail::integrate(integrand, 0.0, 1.0 - 1e-9, 1e-12);
  return 2.0 * tail;
}

}  // namespace oracles
