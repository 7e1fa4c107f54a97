#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ginipop/linalg.hpp"
#include "ginipop/tdist.hpp"

namespace ginipop {

/// Heteroskedasticity-consistent covariance flavor. HC0 is the plain
/// sandwich; HC1 scales it by n/(n-k).
enum class HcVariant { HC0, HC1 };

/// Calibrated against the bundled reference fit: HC1 reproduces the
/// published t-statistics at 2-decimal rounding, HC0 does not.
inline constexpr HcVariant kDefaultHcVariant = HcVariant::HC1;

inline std::string to_string(HcVariant v) { return v == HcVariant::HC0 ? "HC0" : "HC1"; }

/// One named regressor: maps a population count to a design-matrix entry.
struct Regressor {
  std::string name;
  std::function<double(std::int64_t)> fn;
};

struct ModelSpec {
  std::vector<Regressor> basis;
  bool include_intercept = false;
  HcVariant hc_variant = kDefaultHcVariant;
};

enum class RSquaredConvention { Centered, Uncentered };
enum class DfStyle { Standard, NoIntercept };

/// Reporting defaults, calibrated against the published adjusted R-squared
/// (centered total sum of squares, n-1 numerator df is the closest match).
inline constexpr RSquaredConvention kDefaultRSquaredConvention = RSquaredConvention::Centered;
inline constexpr DfStyle kDefaultDfStyle = DfStyle::Standard;

struct GoodnessOfFit {
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
};

/// R-squared of a fit from its response and residuals.
/// centered:   R2 = 1 - SSR / sum((y - mean(y))^2)
/// uncentered: R2 = 1 - SSR / sum(y^2)
/// adjusted = 1 - (1 - R2) * (n - d) / (n - k), d = 1 (standard) or 0.
inline GoodnessOfFit goodness_of_fit(const std::vector<double>& y,
                                     const std::vector<double>& residuals,
                                     std::size_t n_params,
                                     RSquaredConvention convention = kDefaultRSquaredConvention,
                                     DfStyle df_style = kDefaultDfStyle) {
  const std::size_t n = y.size();
  if (residuals.size() != n) throw std::invalid_argument("goodness_of_fit: length mismatch");
  if (n <= n_params) throw std::invalid_argument("goodness_of_fit: no residual degrees of freedom");

  double ssr = 0.0;
  for (double e : residuals) ssr += e * e;

  double sst = 0.0;
  if (convention == RSquaredConvention::Centered) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    for (double v : y) sst += (v - mean) * (v - mean);
  } else {
    for (double v : y) sst += v * v;
  }
  if (!(sst > 0.0))
    throw std::domain_error("goodness_of_fit: total sum of squares is zero (degenerate response)");

  GoodnessOfFit g;
  g.r_squared = 1.0 - ssr / sst;
  const double d = df_style == DfStyle::Standard ? 1.0 : 0.0;
  g.adj_r_squared = 1.0 - (1.0 - g.r_squared) * (static_cast<double>(n) - d) /
                              (static_cast<double>(n) - static_cast<double>(n_params));
  return g;
}

inline GoodnessOfFit goodness_of_fit(const std::vector<double>& y,
                                     const std::vector<double>& residuals,
                                     const ModelSpec& spec,
                                     RSquaredConvention convention = kDefaultRSquaredConvention,
                                     DfStyle df_style = kDefaultDfStyle) {
  return goodness_of_fit(y, residuals, spec.basis.size() + (spec.include_intercept ? 1 : 0),
                         convention, df_style);
}

struct FitResult {
  std::vector<std::string> names;        // regressor labels, intercept first if present
  std::vector<double> coefficients;
  linalg::Matrix robust_covariance;
  std::vector<double> std_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;
  double r_squared = 0.0;                // default reporting convention
  double adj_r_squared = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  HcVariant hc_variant = kDefaultHcVariant;
  std::vector<double> residuals;
};

/// Least squares with heteroskedasticity-consistent inference.
///
/// X carries the named basis columns only; an intercept column is prepended
/// when the spec asks for one. Coefficients come from a column-pivoted
/// Householder QR (relative rank tolerance 1e-10). The robust covariance is
/// (X'X)^-1 X' diag(w e^2) X (X'X)^-1 with w = 1 (HC0) or n/(n-k) (HC1);
/// HC1 is produced by scaling the HC0 matrix so the two are exact multiples.
inline FitResult fit(const std::vector<double>& y, const linalg::Matrix& x,
                     const ModelSpec& spec) {
  const std::size_t n = y.size();
  if (x.rows() != n) throw std::invalid_argument("fit: X rows do not match y length");
  if (x.cols() != spec.basis.size())
    throw std::invalid_argument("fit: X columns do not match the basis");

  const std::size_t k = x.cols() + (spec.include_intercept ? 1 : 0);
  if (k == 0) throw std::invalid_argument("fit: empty basis");
  for (std::size_t a = 0; a < spec.basis.size(); ++a)
    for (std::size_t b = a + 1; b < spec.basis.size(); ++b)
      if (spec.basis[a].name == spec.basis[b].name)
        throw std::invalid_argument("fit: duplicate regressor name '" + spec.basis[a].name + "'");
  if (n <= k)
    throw std::invalid_argument("fit: " + std::to_string(n) + " observations cannot identify " +
                                std::to_string(k) + " parameters");

  FitResult result;
  result.n_obs = n;
  result.n_params = k;
  result.hc_variant = spec.hc_variant;
  if (spec.include_intercept) result.names.push_back("const");
  for (const Regressor& r : spec.basis) result.names.push_back(r.name);

  linalg::Matrix design(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    if (spec.include_intercept) design(i, j++) = 1.0;
    for (std::size_t c = 0; c < x.cols(); ++c) design(i, j++) = x(i, c);
  }

  const linalg::LeastSquaresSolution sol = linalg::solve_least_squares(design, y, 1e-10);
  if (!sol.full_rank)
    throw std::domain_error("fit: design matrix is rank deficient; column '" +
                            result.names[sol.deficient_column] +
                            "' is linearly dependent on the others");

  result.coefficients = sol.coefficients;
  result.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double yhat = 0.0;
    for (std::size_t j = 0; j < k; ++j) yhat += design(i, j) * sol.coefficients[j];
    result.residuals[i] = y[i] - yhat;
  }

  // sandwich: C * (sum_i e_i^2 x_i x_i') * C with C = (X'X)^-1
  linalg::Matrix meat(k, k);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = result.residuals[i] * result.residuals[i];
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) meat(a, b) += w * design(i, a) * design(i, b);
  }
  linalg::Matrix cm(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < k; ++c) s += sol.xtx_inverse(a, c) * meat(c, b);
      cm(a, b) = s;
    }
  linalg::Matrix cov(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < k; ++c) s += cm(a, c) * sol.xtx_inverse(c, b);
      cov(a, b) = s;
    }
  if (spec.hc_variant == HcVariant::HC1) {
    const double scale = static_cast<double>(n) / static_cast<double>(n - k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) cov(a, b) *= scale;
  }
  result.robust_covariance = cov;

  const int df = static_cast<int>(n - k);
  result.std_errors.resize(k);
  result.t_stats.resize(k);
  result.p_values.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    result.std_errors[j] = std::sqrt(cov(j, j));
    result.t_stats[j] = result.std_errors[j] > 0.0
                            ? result.coefficients[j] / result.std_errors[j]
                            : 0.0;
    result.p_values[j] = student_t_p_value(result.t_stats[j], df);
  }

  try {
    const GoodnessOfFit g = goodness_of_fit(y, result.residuals, k);
    result.r_squared = g.r_squared;
    result.adj_r_squared = g.adj_r_squared;
  } catch (const std::domain_error&) {
    // constant response: coefficients are fine, R^2 has no defined base
    result.r_squared = std::numeric_limits<double>::quiet_NaN();
    result.adj_r_squared = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace ginipop
