#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ginipop/dataset.hpp"
#include "ginipop/reference_figures.hpp"
#include "ginipop/target_model.hpp"

namespace ginipop {

enum class Band { Within5, Within10, Outside };
enum class Direction { TooHighInequality, TooLowInequality, AtTarget };

inline std::string to_string(Band b) {
  switch (b) {
    case Band::Within5: return "within-5";
    case Band::Within10: return "within-10";
    default: return "outside";
  }
}

inline std::string to_string(Direction d) {
  switch (d) {
    case Direction::TooHighInequality: return "too-high-inequality";
    case Direction::TooLowInequality: return "too-low-inequality";
    default: return "at-target";
  }
}

/// One classified country. Stored figures are full precision; rounding
/// happens only when rendering.
struct ClassificationRow {
  std::string name;
  std::int64_t population = 0;
  double actual_gini = 0.0;
  double estimated_gini = 0.0;
  bool gap_defined = false;     // false when actual_gini is 0 (no percent base)
  double percent_gap = 0.0;     // (estimated - actual) / actual * 100
  Band band = Band::Outside;
  Direction direction = Direction::AtTarget;
};

struct ClassificationReport {
  std::vector<ClassificationRow> rows;
  std::size_t within5_count = 0;
  std::size_t within10_cumulative_count = 0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::uint64_t model_fingerprint = 0;
};

/// Classify every real country in d against the fitted curve. Anchor rows
/// (population 1) are fitting devices, not countries, and are left out;
/// zero-Gini countries get a row but no percent gap and no band count.
inline ClassificationReport build_report(const TargetGiniModel& m, const Dataset& d) {
  ClassificationReport report;
  report.beta1 = m.beta1;
  report.beta2 = m.beta2;
  report.model_fingerprint = m.source_fingerprint;

  for (const CountryRecord& r : d.records()) {
    if (r.population == 1) continue;
    ClassificationRow row;
    row.name = r.name;
    row.population = r.population;
    row.actual_gini = r.gini;
    row.estimated_gini = predict(m, r.population).value;
    if (r.gini > 0.0) {
      row.gap_defined = true;
      row.percent_gap = (row.estimated_gini - row.actual_gini) / row.actual_gini * 100.0;
      const double mag = std::fabs(row.percent_gap);
      row.band = mag < 5.0 ? Band::Within5 : mag < 10.0 ? Band::Within10 : Band::Outside;
      row.direction = row.percent_gap < 0.0   ? Direction::TooHighInequality
                      : row.percent_gap > 0.0 ? Direction::TooLowInequality
                                              : Direction::AtTarget;
      if (row.band == Band::Within5) ++report.within5_count;
      if (row.band != Band::Outside) ++report.within10_cumulative_count;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

enum class SortKey { None, Gap, Name, Population };

namespace detail {

inline double round_half_away(double v, int digits) {
  double scale = 1.0;
  for (int i = 0; i < digits; ++i) scale *= 10.0;
  return std::round(v * scale) / scale;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, round_half_away(v, digits));
  return std::string(buf);
}

inline std::vector<const ClassificationRow*> sorted_rows(const ClassificationReport& r,
                                                         SortKey key) {
  std::vector<const ClassificationRow*> rows;
  rows.reserve(r.rows.size());
  for (const ClassificationRow& row : r.rows) rows.push_back(&row);
  switch (key) {
    case SortKey::Gap:
      std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
        if (a->gap_defined != b->gap_defined) return a->gap_defined;
        return a->percent_gap < b->percent_gap;
      });
      break;
    case SortKey::Name:
      std::stable_sort(rows.begin(), rows.end(),
                       [](const auto* a, const auto* b) { return a->name < b->name; });
      break;
    case SortKey::Population:
      std::stable_sort(rows.begin(), rows.end(),
                       [](const auto* a, const auto* b) { return a->population < b->population; });
      break;
    case SortKey::None:
      break;
  }
  return rows;
}

}  // namespace detail

/// Aligned text table; Gini columns shown at 3 decimals, gaps at 2,
/// half away from zero.
inline void render_text(const ClassificationReport& r, std::ostream& out,
                        SortKey sort = SortKey::None) {
  const auto rows = detail::sorted_rows(r, sort);
  std::size_t name_w = 7;
  for (const auto* row : rows) name_w = std::max(name_w, row->name.size());

  char head[256];
  std::snprintf(head, sizeof head, "%-*s  %12s  %7s  %9s  %8s  %-9s  %s", static_cast<int>(name_w),
                "country", "population", "actual", "estimated", "gap(%)", "band", "direction");
  out << head << '\n';
  for (const auto* row : rows) {
    char line[320];
    if (row->gap_defined) {
      std::snprintf(line, sizeof line, "%-*s  %12lld  %7s  %9s  %8s  %-9s  %s",
                    static_cast<int>(name_w), row->name.c_str(),
                    static_cast<long long>(row->population),
                    detail::fixed(row->actual_gini, 3).c_str(),
                    detail::fixed(row->estimated_gini, 3).c_str(),
                    detail::fixed(row->percent_gap, 2).c_str(), to_string(row->band).c_str(),
                    to_string(row->direction).c_str());
    } else {
      std::snprintf(line, sizeof line, "%-*s  %12lld  %7s  %9s  %8s  %-9s  %s",
                    static_cast<int>(name_w), row->name.c_str(),
                    static_cast<long long>(row->population),
                    detail::fixed(row->actual_gini, 3).c_str(),
                    detail::fixed(row->estimated_gini, 3).c_str(), "n/a", "n/a", "n/a");
    }
    out << line << '\n';
  }
  out << "within 5%: " << r.within5_count
      << "   within 10% (cumulative): " << r.within10_cumulative_count << '\n';
}

/// Machine-readable export; numeric columns keep full precision so the
/// file can stand in for the scatter data behind the fitted curve.
inline void render_csv(const ClassificationReport& r, std::ostream& out,
                       SortKey sort = SortKey::None) {
  out << "name,population,actual_gini,estimated_gini,percent_gap,band,direction\n";
  for (const auto* row : detail::sorted_rows(r, sort)) {
    out << detail::csv_quote(row->name) << ',' << row->population << ','
        << detail::shortest_double(row->actual_gini) << ','
        << detail::shortest_double(row->estimated_gini) << ',';
    if (row->gap_defined) {
      out << detail::shortest_double(row->percent_gap) << ',' << to_string(row->band) << ','
          << to_string(row->direction) << '\n';
    } else {
      out << ",undefined,undefined\n";
    }
  }
}

/// One compared figure in the reproduction summary.
struct CheckCell {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ReproductionSummary {
  std::vector<CheckCell> cells;
  std::size_t n_pass = 0;
  std::size_t n_fail = 0;
  bool all_pass = false;
};

namespace detail {

inline void push_cell(ReproductionSummary& s, std::string label, std::string expected,
                      std::string actual, bool pass) {
  s.cells.push_back({std::move(label), std::move(expected), std::move(actual), pass});
  if (pass) ++s.n_pass; else ++s.n_fail;
}

}  // namespace detail

/// Compare every figure the pipeline produces on d against the published
/// reference values: coefficients at 4 decimals, t at 2, p at 4, adjusted
/// R-squared at 4, estimated Gini within 0.001, percent gaps within 0.15,
/// and the percent-band membership lists verbatim. Mismatches are recorded,
/// not thrown.
inline ReproductionSummary reproduction_check(const TargetGiniModel& m, const Dataset& d) {
  using detail::fixed;
  ReproductionSummary s;

  detail::push_cell(s, "beta1 (4dp)", fixed(reference::kBeta1, 4), fixed(m.beta1, 4),
                    fixed(m.beta1, 4) == fixed(reference::kBeta1, 4));
  detail::push_cell(s, "beta2 (4dp)", fixed(reference::kBeta2, 4), fixed(m.beta2, 4),
                    fixed(m.beta2, 4) == fixed(reference::kBeta2, 4));
  detail::push_cell(s, "t[ln(Pop)] (2dp)", fixed(reference::kT1, 2), fixed(m.fit.t_stats[0], 2),
                    fixed(m.fit.t_stats[0], 2) == fixed(reference::kT1, 2));
  detail::push_cell(s, "t[ln(Pop)^2] (2dp)", fixed(reference::kT2, 2), fixed(m.fit.t_stats[1], 2),
                    fixed(m.fit.t_stats[1], 2) == fixed(reference::kT2, 2));
  {
    char actual[64];
    std::snprintf(actual, sizeof actual, "%.3e", m.fit.p_values[0]);
    detail::push_cell(s, "p[ln(Pop)]", "< 0.00005", actual,
                      m.fit.p_values[0] < reference::kP1UpperBound);
  }
  detail::push_cell(s, "p[ln(Pop)^2] (4dp)", fixed(reference::kP2, 4), fixed(m.fit.p_values[1], 4),
                    fixed(m.fit.p_values[1], 4) == fixed(reference::kP2, 4));
  detail::push_cell(s, "adjusted R^2 (4dp)", fixed(reference::kAdjRSquared, 4),
                    fixed(m.fit.adj_r_squared, 4),
                    fixed(m.fit.adj_r_squared, 4) == fixed(reference::kAdjRSquared, 4));

  const ClassificationReport report = build_report(m, d);
  std::map<std::string, const ClassificationRow*> by_name;
  for (const ClassificationRow& row : report.rows) by_name[row.name] = &row;

  for (const reference::CountryFigures& ref : reference::kCountryFigures) {
    const auto it = by_name.find(std::string(ref.name));
    if (it == by_name.end()) {
      detail::push_cell(s, "estimated[" + std::string(ref.name) + "]",
                        fixed(ref.estimated_gini, 3), "missing", false);
      detail::push_cell(s, "gap[" + std::string(ref.name) + "]", fixed(ref.percent_gap, 2),
                        "missing", false);
      continue;
    }
    const ClassificationRow& row = *it->second;
    detail::push_cell(s, "estimated[" + std::string(ref.name) + "] (+-0.001)",
                      fixed(ref.estimated_gini, 3), fixed(row.estimated_gini, 4),
                      std::fabs(row.estimated_gini - ref.estimated_gini) <= 0.001);
    detail::push_cell(s, "gap[" + std::string(ref.name) + "] (+-0.15)", fixed(ref.percent_gap, 2),
                      fixed(row.percent_gap, 2),
                      row.gap_defined &&
                          std::fabs(row.percent_gap - ref.percent_gap) <= 0.15);
  }

  std::set<std::string> within5, within10;
  for (const ClassificationRow& row : report.rows) {
    if (!row.gap_defined) continue;
    if (row.band == Band::Within5) within5.insert(row.name);
    if (row.band != Band::Outside) within10.insert(row.name);
  }
  std::set<std::string> ref5, ref10;
  for (const auto name : reference::kWithinFivePercent) ref5.insert(std::string(name));
  ref10 = ref5;
  for (const auto name : reference::kWithinTenPercentExtra) ref10.insert(std::string(name));

  auto joined = [](const std::set<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
      if (!out.empty()) out += ", ";
      out += n;
    }
    return out;
  };
  detail::push_cell(s, "within-5 count", "12", std::to_string(within5.size()),
                    within5.size() == 12);
  detail::push_cell(s, "within-10 cumulative count", "23", std::to_string(within10.size()),
                    within10.size() == 23);
  detail::push_cell(s, "within-5 membership", joined(ref5), joined(within5), within5 == ref5);
  detail::push_cell(s, "within-10 membership", joined(ref10), joined(within10),
                    within10 == ref10);

  s.all_pass = s.n_fail == 0;
  return s;
}

/// Cell-by-cell listing; failing cells always shown in full.
inline void render_reproduction_text(const ReproductionSummary& s, std::ostream& out,
                                     bool show_passing = false) {
  for (const CheckCell& c : s.cells) {
    if (c.pass && !show_passing) continue;
    out << (c.pass ? "ok       " : "MISMATCH ") << c.label << ": expected " << c.expected
        << ", got " << c.actual << '\n';
  }
  out << s.n_pass << " of " << s.cells.size() << " reference figures matched";
  if (s.n_fail > 0) out << " (" << s.n_fail << " mismatched)";
  out << '\n';
}

/// Coefficient table: 4-decimal coefficients, 2-decimal t, 4-decimal p.
inline void render_fit_text(const FitResult& fit, std::ostream& out) {
  out << "zero-intercept least squares, " << to_string(fit.hc_variant)
      << " robust errors  (n = " << fit.n_obs << ")\n\n";
  std::size_t name_w = 8;
  for (const std::string& n : fit.names) name_w = std::max(name_w, n.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %12s  %11s  %7s  %8s", static_cast<int>(name_w),
                "variable", "coefficient", "std. error", "t-stat", "p-value");
  out << line << '\n';
  for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
    std::snprintf(line, sizeof line, "%-*s  %12s  %11.6f  %7s  %8s", static_cast<int>(name_w),
                  fit.names[j].c_str(), detail::fixed(fit.coefficients[j], 4).c_str(),
                  fit.std_errors[j], detail::fixed(fit.t_stats[j], 2).c_str(),
                  detail::fixed(fit.p_values[j], 4).c_str());
    out << line << '\n';
  }
  out << "\nR-squared = " << detail::fixed(fit.r_squared, 4)
      << "   adjusted R-squared = " << detail::fixed(fit.adj_r_squared, 4) << '\n';
}

inline void render_forms_text(const FormComparison& cmp, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "%-10s  %8s  %10s  %14s", "form", "n_params", "R-squared",
                "adj R-squared");
  out << line << '\n';
  for (const FormEntry& e : cmp.entries) {
    if (e.error) {
      std::snprintf(line, sizeof line, "%-10s  %8zu  failed: %s", e.form.c_str(), e.n_params,
                    e.error->c_str());
    } else {
      std::snprintf(line, sizeof line, "%-10s  %8zu  %10.6f  %14.6f", e.form.c_str(), e.n_params,
                    e.r_squared, e.adj_r_squared);
    }
    out << line << '\n';
  }
  out << "ranking (adj R-squared): ";
  for (std::size_t i = 0; i < cmp.ranking.size(); ++i) {
    if (i) out << " > ";
    out << cmp.ranking[i];
  }
  out << '\n';
}

}  // namespace ginipop
