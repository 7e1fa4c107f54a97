#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ginipop/random.hpp"

namespace ginipop {

/// A vector of nonnegative incomes. The Gini coefficient is defined only
/// when at least one entry is positive.
struct IncomeSample {
  std::vector<double> incomes;
};

inline void validate_income_sample(const IncomeSample& s) {
  if (s.incomes.empty()) throw std::invalid_argument("income sample is empty");
  for (double v : s.incomes) {
    if (!(v >= 0.0)) throw std::invalid_argument("income sample contains a negative or non-finite value");
  }
}

/// Largest Gini a population of p can attain: (p-1)/p, reached when one
/// member holds all income.
inline double max_gini(std::int64_t p) {
  if (p < 1) throw std::invalid_argument("max_gini: population must be >= 1");
  return static_cast<double>(p - 1) / static_cast<double>(p);
}

/// Population-weighted discrete Gini coefficient.
///
/// G = (2*sum(i*x_(i)) - (n+1)*sum(x)) / (n*sum(x)) over the ascending-sorted
/// sample, i = 1..n. Equals twice the area between the diagonal and the
/// discrete Lorenz curve, so a single rich member among n people yields
/// exactly (n-1)/n.
inline double gini_coefficient(const IncomeSample& s) {
  validate_income_sample(s);
  std::vector<double> x = s.incomes;
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += x[i];
    weighted += static_cast<double>(i + 1) * x[i];
  }
  if (!(total > 0.0)) throw std::domain_error("gini is undefined for an all-zero income sample");
  const double nn = static_cast<double>(n);
  double g = (2.0 * weighted - (nn + 1.0) * total) / (nn * total);
  const double upper = (nn - 1.0) / nn;
  if (g < 0.0) g = 0.0;
  if (g > upper) g = upper;
  return g;
}

/// Outcome of repeatedly subsampling an income vector and measuring Gini.
/// Draws whose total income is zero have no defined Gini; they are skipped
/// and counted in `skipped`, and the mean/stderr cover valid draws only.
struct SubsampleReport {
  double full_gini = 0.0;
  std::size_t subsample_size = 0;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  double mean_subsample_gini = 0.0;
  double stderr_of_mean = 0.0;
};

/// Draw `trials` uniform subsets of size k without replacement and measure
/// the Gini of each. Trial t uses the substream(seed, t) generator, so the
/// result is a pure function of (s, k, trials, seed) regardless of any
/// evaluation order.
inline SubsampleReport subsample_experiment(const IncomeSample& s, std::size_t k,
                                            std::size_t trials, std::uint64_t seed) {
  validate_income_sample(s);
  const std::size_t n = s.incomes.size();
  if (k < 1 || k > n) throw std::invalid_argument("subsample_experiment: k must be in [1, sample size]");
  if (trials < 1) throw std::invalid_argument("subsample_experiment: trials must be >= 1");

  SubsampleReport report;
  report.full_gini = gini_coefficient(s);
  report.subsample_size = k;
  report.trials = trials;

  std::vector<double> ginis;
  ginis.reserve(trials);
  IncomeSample draw;
  draw.incomes.resize(k);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = substream(seed, t);
    const std::vector<std::size_t> idx = sample_without_replacement(n, k, rng);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      draw.incomes[i] = s.incomes[idx[i]];
      total += draw.incomes[i];
    }
    if (total > 0.0) {
      ginis.push_back(gini_coefficient(draw));
    } else {
      ++report.skipped;
    }
  }
  if (ginis.empty()) throw std::domain_error("subsample_experiment: every draw had zero total income");

  double sum = 0.0;
  for (double g : ginis) sum += g;
  report.mean_subsample_gini = sum / static_cast<double>(ginis.size());
  if (ginis.size() > 1) {
    double ss = 0.0;
    for (double g : ginis) {
      const double d = g - report.mean_subsample_gini;
      ss += d * d;
    }
    const double var = ss / static_cast<double>(ginis.size() - 1);
    report.stderr_of_mean = std::sqrt(var / static_cast<double>(ginis.size()));
  }
  return report;
}

}  // namespace ginipop
