#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginipop/dataset.hpp"
#include "ginipop/regress.hpp"

namespace ginipop {

/// The target relationship: Gini = b1*ln(P) + b2*ln(P)^2, no intercept,
/// so a one-person country predicts exactly zero.
struct TargetGiniModel {
  double beta1 = 0.0;                 // coefficient on ln(Pop)
  double beta2 = 0.0;                 // coefficient on [ln(Pop)]^2
  FitResult fit;
  std::uint64_t source_fingerprint = 0;
  std::int64_t max_fit_population = 0;
  std::vector<std::string> warnings;  // sign expectations b1 > 0, b2 < 0
};

inline std::vector<Regressor> target_basis() {
  return {
      {"ln(Pop)", [](std::int64_t p) { return std::log(static_cast<double>(p)); }},
      {"[ln(Pop)]^2", [](std::int64_t p) {
         const double l = std::log(static_cast<double>(p));
         return l * l;
       }},
  };
}

namespace detail {

inline linalg::Matrix design_for(const Dataset& d, const std::vector<Regressor>& basis) {
  linalg::Matrix x(d.size(), basis.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      x(i, j) = basis[j].fn(d.records()[i].population);
  return x;
}

inline std::vector<double> response_for(const Dataset& d) {
  std::vector<double> y(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) y[i] = d.records()[i].gini;
  return y;
}

}  // namespace detail

/// Fit the zero-intercept log-quadratic on d (anchor appended by default).
inline TargetGiniModel fit_target_model(const Dataset& d,
                                        HcVariant hc = kDefaultHcVariant,
                                        bool add_anchor = true) {
  const Dataset sample = add_anchor ? with_anchor(d) : d;
  if (sample.size() < 3)
    throw std::invalid_argument("fit_target_model: need at least 3 observations, got " +
                                std::to_string(sample.size()));

  ModelSpec spec;
  spec.basis = target_basis();
  spec.include_intercept = false;
  spec.hc_variant = hc;

  TargetGiniModel m;
  m.fit = fit(detail::response_for(sample), detail::design_for(sample, spec.basis), spec);
  m.beta1 = m.fit.coefficients[0];
  m.beta2 = m.fit.coefficients[1];
  m.source_fingerprint = fingerprint(sample);
  m.max_fit_population = 0;
  for (const CountryRecord& r : sample.records())
    m.max_fit_population = std::max(m.max_fit_population, r.population);
  if (!(m.beta1 > 0.0))
    m.warnings.push_back("coefficient on ln(Pop) is not positive: " + std::to_string(m.beta1));
  if (!(m.beta2 < 0.0))
    m.warnings.push_back("coefficient on [ln(Pop)]^2 is not negative: " + std::to_string(m.beta2));
  return m;
}

struct Prediction {
  double value = 0.0;
  bool extrapolated = false;     // population beyond the fitting sample
  bool outside_bounds = false;   // value escapes [0, (P-1)/P]; never clamped
};

/// Evaluate the fitted curve at population p. Out-of-range inputs are a
/// domain error; out-of-bound outputs are flagged, not clamped.
inline Prediction predict(const TargetGiniModel& m, std::int64_t p) {
  if (p < 1) throw std::invalid_argument("predict: population must be >= 1");
  const double l = std::log(static_cast<double>(p));
  Prediction out;
  out.value = m.beta1 * l + m.beta2 * l * l;
  out.extrapolated = p > m.max_fit_population;
  out.outside_bounds = out.value < 0.0 || out.value > max_gini(p);
  return out;
}

struct FormEntry {
  std::string form;
  std::size_t n_params = 0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  std::optional<std::string> error;
};

struct FormComparison {
  std::vector<FormEntry> entries;       // fixed order: linear, quadratic, cubic, log-root
  std::vector<std::string> ranking;     // by adjusted R^2, best first
};

/// Fit the four candidate zero-intercept forms and rank them by adjusted
/// R-squared. A form that fails to fit keeps its slot with an error note.
inline FormComparison compare_forms(const Dataset& d,
                                    HcVariant hc = kDefaultHcVariant,
                                    bool add_anchor = true) {
  const Dataset sample = add_anchor ? with_anchor(d) : d;
  if (sample.size() < 5)
    throw std::invalid_argument("compare_forms: need at least 5 observations, got " +
                                std::to_string(sample.size()));

  const auto ln = [](std::int64_t p) { return std::log(static_cast<double>(p)); };
  const std::vector<std::pair<std::string, std::vector<Regressor>>> forms = {
      {"linear", {{"ln(Pop)", [ln](std::int64_t p) { return ln(p); }}}},
      {"quadratic",
       {{"ln(Pop)", [ln](std::int64_t p) { return ln(p); }},
        {"[ln(Pop)]^2", [ln](std::int64_t p) { const double l = ln(p); return l * l; }}}},
      {"cubic",
       {{"ln(Pop)", [ln](std::int64_t p) { return ln(p); }},
        {"[ln(Pop)]^2", [ln](std::int64_t p) { const double l = ln(p); return l * l; }},
        {"[ln(Pop)]^3", [ln](std::int64_t p) { const double l = ln(p); return l * l * l; }}}},
      {"log-root",
       {{"ln(Pop)", [ln](std::int64_t p) { return ln(p); }},
        {"sqrt(ln(Pop))", [ln](std::int64_t p) { return std::sqrt(ln(p)); }}}},
  };

  FormComparison cmp;
  const std::vector<double> y = detail::response_for(sample);
  for (const auto& [name, basis] : forms) {
    FormEntry entry;
    entry.form = name;
    entry.n_params = basis.size();
    try {
      ModelSpec spec;
      spec.basis = basis;
      spec.include_intercept = false;
      spec.hc_variant = hc;
      const FitResult r = fit(y, detail::design_for(sample, basis), spec);
      entry.r_squared = r.r_squared;
      entry.adj_r_squared = r.adj_r_squared;
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    cmp.entries.push_back(std::move(entry));
  }

  std::vector<const FormEntry*> order;
  for (const FormEntry& e : cmp.entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const FormEntry* a, const FormEntry* b) {
    if (a->error.has_value() != b->error.has_value()) return !a->error.has_value();
    if (a->adj_r_squared != b->adj_r_squared) return a->adj_r_squared > b->adj_r_squared;
    return a->form < b->form;
  });
  for (const FormEntry* e : order) cmp.ranking.push_back(e->form);
  return cmp;
}

}  // namespace ginipop
