#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ginipop/dataset.hpp"
#include "ginipop/random.hpp"
#include "ginipop/regress.hpp"
#include "oracles.hpp"

using ginipop::HcVariant;
using ginipop::ModelSpec;
using ginipop::Regressor;
using ginipop::SplitMix64;
using ginipop::linalg::Matrix;

namespace {

ModelSpec two_column_spec(HcVariant hc = ginipop::kDefaultHcVariant) {
  ModelSpec spec;
  spec.basis = {{"a", nullptr}, {"b", nullptr}};
  spec.include_intercept = false;
  spec.hc_variant = hc;
  return spec;
}

// design matrix and response for the bundled reference regression
struct BundledSystem {
  Matrix x;
  std::vector<double> y;
};

BundledSystem bundled_system() {
  const ginipop::Dataset& d = ginipop::bundled_reference();
  BundledSystem sys{Matrix(d.size(), 2), {}};
  sys.y.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double l = std::log(static_cast<double>(d.records()[i].population));
    sys.x(i, 0) = l;
    sys.x(i, 1) = l * l;
    sys.y[i] = d.records()[i].gini;
  }
  return sys;
}

ModelSpec log_quadratic_spec(HcVariant hc) {
  ModelSpec spec;
  spec.basis = {{"ln(Pop)", nullptr}, {"[ln(Pop)]^2", nullptr}};
  spec.include_intercept = false;
  spec.hc_variant = hc;
  return spec;
}

}  // namespace

TEST_CASE("noiseless responses are recovered exactly") {
  SplitMix64 rng(55);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 4 + rng.next_below(17);
    const std::size_t k = 1 + rng.next_below(3);
    if (n <= k) continue;
    Matrix x(n, k);
    std::vector<double> truth(k);
    for (std::size_t j = 0; j < k; ++j) {
      const double magnitude = 0.25 + static_cast<double>(rng.next_below(200)) / 100.0;
      truth[j] = rng.next_below(2) == 0 ? magnitude : -magnitude;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        x(i, j) = -5.0 + static_cast<double>(rng.next_below(10000)) / 1000.0;
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) y[i] += x(i, j) * truth[j];

    ModelSpec spec;
    for (std::size_t j = 0; j < k; ++j) spec.basis.push_back({"x" + std::to_string(j), nullptr});
    const auto fit = ginipop::fit(y, x, spec);
    for (std::size_t j = 0; j < k; ++j)
      CHECK_THAT(fit.coefficients[j], Catch::Matchers::WithinAbs(truth[j], 1e-9));
    for (double e : fit.residuals) CHECK_THAT(e, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(fit.r_squared, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("coefficients match a direct normal-equations solve") {
  SplitMix64 rng(56);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 5 + rng.next_below(16);
    const std::size_t k = 1 + rng.next_below(3);
    Matrix x(n, k);
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        x(i, j) = -3.0 + static_cast<double>(rng.next_below(6000)) / 1000.0;
        rows[i][j] = x(i, j);
      }
      y[i] = -1.0 + static_cast<double>(rng.next_below(2000)) / 1000.0;
    }
    ModelSpec spec;
    for (std::size_t j = 0; j < k; ++j) spec.basis.push_back({"x" + std::to_string(j), nullptr});
    const auto fit = ginipop::fit(y, x, spec);
    const auto oracle = oracles::normal_equations_fit(rows, y);
    for (std::size_t j = 0; j < k; ++j)
      CHECK_THAT(fit.coefficients[j], Catch::Matchers::WithinAbs(oracle[j], 1e-9));
  }
}

TEST_CASE("residuals are orthogonal to the design") {
  const BundledSystem sys = bundled_system();
  const auto fit = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC1));
  for (std::size_t j = 0; j < 2; ++j) {
    double xe = 0.0;
    double xy = 0.0;
    for (std::size_t i = 0; i < sys.y.size(); ++i) {
      xe += sys.x(i, j) * fit.residuals[i];
      xy += sys.x(i, j) * sys.y[i];
    }
    CHECK(std::fabs(xe) <= 1e-8 * std::fabs(xy));
  }
}

TEST_CASE("bundled reference fit, HC1 inference") {
  const BundledSystem sys = bundled_system();
  const auto fit = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC1));

  CHECK(fit.n_obs == 70);
  CHECK(fit.n_params == 2);
  CHECK_THAT(fit.coefficients[0], Catch::Matchers::WithinAbs(0.030374802890049, 1e-12));
  CHECK_THAT(fit.coefficients[1], Catch::Matchers::WithinAbs(-0.000477219572919, 1e-14));
  CHECK_THAT(fit.std_errors[0], Catch::Matchers::WithinAbs(0.005776511627562, 1e-12));
  CHECK_THAT(fit.std_errors[1], Catch::Matchers::WithinAbs(0.000350876410371, 1e-14));
  CHECK_THAT(fit.t_stats[0], Catch::Matchers::WithinAbs(5.2583297409, 1e-8));
  CHECK_THAT(fit.t_stats[1], Catch::Matchers::WithinAbs(-1.3600788164, 1e-8));
  CHECK_THAT(fit.p_values[0], Catch::Matchers::WithinAbs(1.590219e-06, 1e-11));
  CHECK_THAT(fit.p_values[1], Catch::Matchers::WithinAbs(0.1782971226, 1e-9));
  CHECK_THAT(fit.r_squared, Catch::Matchers::WithinAbs(0.256282932599, 1e-11));
  CHECK_THAT(fit.adj_r_squared, Catch::Matchers::WithinAbs(0.245345916902, 1e-11));

  // covariance is symmetric with nonnegative diagonal, and t = beta / se
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(fit.robust_covariance(a, a) >= 0.0);
    for (std::size_t b = 0; b < 2; ++b)
      CHECK_THAT(fit.robust_covariance(a, b),
                 Catch::Matchers::WithinAbs(fit.robust_covariance(b, a), 1e-18));
  }
  CHECK(fit.t_stats[0] == fit.coefficients[0] / fit.std_errors[0]);
}

TEST_CASE("bundled reference fit, HC0 inference") {
  const BundledSystem sys = bundled_system();
  const auto fit = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC0));
  CHECK_THAT(fit.std_errors[0], Catch::Matchers::WithinAbs(0.005693392018909, 1e-12));
  CHECK_THAT(fit.std_errors[1], Catch::Matchers::WithinAbs(0.000345827565706, 1e-14));
  CHECK_THAT(fit.t_stats[0], Catch::Matchers::WithinAbs(5.3350977395, 1e-8));
  CHECK_THAT(fit.t_stats[1], Catch::Matchers::WithinAbs(-1.3799350319, 1e-8));
  CHECK_THAT(fit.p_values[1], Catch::Matchers::WithinAbs(0.1721270609, 1e-9));
}

TEST_CASE("HC1 covariance is the exact n/(n-k) multiple of HC0") {
  const BundledSystem sys = bundled_system();
  const auto hc0 = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC0));
  const auto hc1 = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC1));
  const double scale = 70.0 / 68.0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(hc1.robust_covariance(a, b) == scale * hc0.robust_covariance(a, b));
}

TEST_CASE("rank-deficient designs name the dependent column") {
  Matrix x(6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    x(i, 0) = static_cast<double>(i + 1);
    x(i, 1) = 2.0 * static_cast<double>(i + 1);  // exact multiple of column 0
  }
  const std::vector<double> y{1, 2, 3, 4, 5, 6};
  ModelSpec spec = two_column_spec();
  try {
    ginipop::fit(y, x, spec);
    FAIL("expected a rank-deficiency error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("rank deficient") != std::string::npos);
    // one of the two interchangeable columns is reported
    CHECK((msg.find("'a'") != std::string::npos || msg.find("'b'") != std::string::npos));
  }
}

TEST_CASE("too few observations is an error") {
  Matrix x(2, 2);
  x(0, 0) = 1; x(0, 1) = 2; x(1, 0) = 3; x(1, 1) = 4;
  CHECK_THROWS_AS(ginipop::fit({1.0, 2.0}, x, two_column_spec()), std::invalid_argument);
}

TEST_CASE("regressor names must be unique") {
  Matrix x(5, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = static_cast<double>(i * i);
  }
  ModelSpec spec;
  spec.basis = {{"same", nullptr}, {"same", nullptr}};
  CHECK_THROWS_AS(ginipop::fit({0, 1, 2, 3, 4}, x, spec), std::invalid_argument);
}

TEST_CASE("include_intercept matches a manual constant column") {
  SplitMix64 rng(57);
  const std::size_t n = 12;
  Matrix x(n, 1);
  Matrix x_with_const(n, 2);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = static_cast<double>(rng.next_below(100)) / 10.0;
    x_with_const(i, 0) = 1.0;
    x_with_const(i, 1) = x(i, 0);
    y[i] = 0.5 + 2.0 * x(i, 0) + (static_cast<double>(rng.next_below(100)) - 50.0) / 500.0;
  }
  ModelSpec with_flag;
  with_flag.basis = {{"x", nullptr}};
  with_flag.include_intercept = true;
  ModelSpec manual = two_column_spec();

  const auto a = ginipop::fit(y, x, with_flag);
  const auto b = ginipop::fit(y, x_with_const, manual);
  REQUIRE(a.names.size() == 2);
  CHECK(a.names[0] == "const");
  CHECK(a.n_params == 2);
  CHECK_THAT(a.coefficients[0], Catch::Matchers::WithinAbs(b.coefficients[0], 1e-12));
  CHECK_THAT(a.coefficients[1], Catch::Matchers::WithinAbs(b.coefficients[1], 1e-12));
}

TEST_CASE("goodness_of_fit conventions on the bundled fit") {
  using ginipop::DfStyle;
  using ginipop::RSquaredConvention;
  const BundledSystem sys = bundled_system();
  const auto fit = ginipop::fit(sys.y, sys.x, log_quadratic_spec(HcVariant::HC1));

  const auto centered_std = ginipop::goodness_of_fit(sys.y, fit.residuals, 2,
                                                     RSquaredConvention::Centered,
                                                     DfStyle::Standard);
  CHECK_THAT(centered_std.adj_r_squared, Catch::Matchers::WithinAbs(0.245345916902, 1e-11));

  const auto centered_noint = ginipop::goodness_of_fit(sys.y, fit.residuals, 2,
                                                       RSquaredConvention::Centered,
                                                       DfStyle::NoIntercept);
  CHECK_THAT(centered_noint.adj_r_squared, Catch::Matchers::WithinAbs(0.234408901205, 1e-11));

  const auto uncentered_std = ginipop::goodness_of_fit(sys.y, fit.residuals, 2,
                                                       RSquaredConvention::Uncentered,
                                                       DfStyle::Standard);
  CHECK_THAT(uncentered_std.r_squared, Catch::Matchers::WithinAbs(0.952368893461, 1e-11));
  CHECK_THAT(uncentered_std.adj_r_squared, Catch::Matchers::WithinAbs(0.951668436012, 1e-11));

  const auto uncentered_noint = ginipop::goodness_of_fit(sys.y, fit.residuals, 2,
                                                         RSquaredConvention::Uncentered,
                                                         DfStyle::NoIntercept);
  CHECK_THAT(uncentered_noint.adj_r_squared, Catch::Matchers::WithinAbs(0.950967978563, 1e-11));

  // the ModelSpec overload counts parameters the same way
  const auto via_spec = ginipop::goodness_of_fit(sys.y, fit.residuals,
                                                 log_quadratic_spec(HcVariant::HC1));
  CHECK(via_spec.adj_r_squared == centered_std.adj_r_squared);
}

TEST_CASE("goodness_of_fit edge cases") {
  const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> zero(4, 0.0);
  const auto perfect = ginipop::goodness_of_fit(y, zero, 1);
  CHECK(perfect.r_squared == 1.0);
  CHECK(perfect.adj_r_squared == 1.0);

  const std::vector<double> constant(4, 2.5);
  CHECK_THROWS_AS(ginipop::goodness_of_fit(constant, zero, 1,
                                           ginipop::RSquaredConvention::Centered,
                                           ginipop::DfStyle::Standard),
                  std::domain_error);
}

TEST_CASE("a constant response still fits; its R^2 is undefined") {
  Matrix x(5, 1);
  for (std::size_t i = 0; i < 5; ++i) x(i, 0) = static_cast<double>(i + 1);
  ModelSpec spec;
  spec.basis = {{"x", nullptr}};
  const auto fit = ginipop::fit(std::vector<double>(5, 0.0), x, spec);
  CHECK(fit.coefficients[0] == 0.0);
  CHECK(std::isnan(fit.r_squared));
  CHECK(std::isnan(fit.adj_r_squared));
}
