#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ginipop/dataset.hpp"
#include "ginipop/gini.hpp"
#include "ginipop/report.hpp"
#include "ginipop/target_model.hpp"

namespace ginipop::cli {

enum class Command { Fit, Predict, Report, Compare, Gini, SubsampleBias, DumpData, Reproduce };
enum class OutputFormat { Text, Csv, Json };

struct CliConfig {
  Command command = Command::Fit;
  std::optional<std::string> input_path;
  OutputFormat format = OutputFormat::Text;
  HcVariant hc = kDefaultHcVariant;
  bool no_anchor = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  std::int64_t k = 1;
  std::int64_t population = 0;
  SortKey sort = SortKey::None;
  bool verbose = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

/// Parse an argv-style vector (program name excluded) into a validated
/// config. Throws UsageError on bad flags, HelpRequested for --help.
inline CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig cfg;

  CLI::App app{"income-inequality targets from population size"};
  app.require_subcommand(1);

  const std::map<std::string, HcVariant> hc_map{{"hc0", HcVariant::HC0}, {"hc1", HcVariant::HC1}};
  const std::map<std::string, SortKey> sort_map{
      {"gap", SortKey::Gap}, {"name", SortKey::Name}, {"population", SortKey::Population}};

  auto add_dataset_flags = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input_path, "country CSV (name,population,gini); bundled data if omitted");
    sub->add_flag("--no-anchor", cfg.no_anchor, "fit the data as given, without appending the one-person observation");
    sub->add_option("--hc", cfg.hc, "robust covariance variant")
        ->transform(CLI::CheckedTransformer(hc_map, CLI::ignore_case));
  };
  auto add_json_flag = [&](CLI::App* sub) {
    return sub->add_flag_callback("--json", [&] { cfg.format = OutputFormat::Json; },
                                  "machine-readable output, full precision");
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit the zero-intercept log-quadratic model");
  add_dataset_flags(fit_cmd);
  add_json_flag(fit_cmd);

  CLI::App* predict_cmd = app.add_subcommand("predict", "estimate the fitted Gini for a population");
  add_dataset_flags(predict_cmd);
  add_json_flag(predict_cmd);
  predict_cmd->add_option("--population", cfg.population, "population headcount")->required();

  CLI::App* report_cmd = app.add_subcommand("report", "classify countries against fitted values");
  add_dataset_flags(report_cmd);
  CLI::Option* report_json = add_json_flag(report_cmd);
  CLI::Option* report_csv = report_cmd->add_flag_callback(
      "--csv", [&] { cfg.format = OutputFormat::Csv; }, "CSV output, full precision");
  report_json->excludes(report_csv);
  report_csv->excludes(report_json);
  report_cmd->add_option("--sort", cfg.sort, "row order")
      ->transform(CLI::CheckedTransformer(sort_map, CLI::ignore_case));

  CLI::App* compare_cmd = app.add_subcommand("compare", "goodness of fit across candidate forms");
  add_dataset_flags(compare_cmd);
  add_json_flag(compare_cmd);

  CLI::App* gini_cmd = app.add_subcommand("gini", "Gini coefficient of an income list (one per line)");
  gini_cmd->add_option("--input", cfg.input_path, "income file; stdin if omitted");
  add_json_flag(gini_cmd);

  CLI::App* sub_cmd = app.add_subcommand("subsample-bias", "Gini of random subsamples drawn without replacement");
  sub_cmd->add_option("--input", cfg.input_path, "income file; stdin if omitted");
  sub_cmd->add_option("--k", cfg.k, "subsample size")->required();
  sub_cmd->add_option("--trials", cfg.trials, "number of random draws");
  sub_cmd->add_option("--seed", cfg.seed, "RNG seed");
  add_json_flag(sub_cmd);

  app.add_subcommand("dump-data", "write the bundled dataset as CSV");

  CLI::App* repro_cmd = app.add_subcommand("reproduce", "check computed figures against the published reference table");
  add_dataset_flags(repro_cmd);
  add_json_flag(repro_cmd);
  repro_cmd->add_flag("--verbose", cfg.verbose, "list matching cells too");

  std::vector<const char*> argv;
  argv.push_back("ginipop");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (fit_cmd->parsed()) cfg.command = Command::Fit;
  else if (predict_cmd->parsed()) cfg.command = Command::Predict;
  else if (report_cmd->parsed()) cfg.command = Command::Report;
  else if (compare_cmd->parsed()) cfg.command = Command::Compare;
  else if (gini_cmd->parsed()) cfg.command = Command::Gini;
  else if (sub_cmd->parsed()) cfg.command = Command::SubsampleBias;
  else if (repro_cmd->parsed()) cfg.command = Command::Reproduce;
  else cfg.command = Command::DumpData;
  return cfg;
}

namespace detail {

inline Dataset load_dataset(const CliConfig& cfg) {
  if (!cfg.input_path) return bundled_reference();
  std::ifstream in(*cfg.input_path);
  if (!in) throw std::runtime_error("cannot open input file '" + *cfg.input_path + "'");
  return load_csv(in);
}

inline IncomeSample load_incomes(const CliConfig& cfg, std::istream& fallback) {
  std::ifstream file;
  std::istream* in = &fallback;
  if (cfg.input_path) {
    file.open(*cfg.input_path);
    if (!file) throw std::runtime_error("cannot open input file '" + *cfg.input_path + "'");
    in = &file;
  }
  IncomeSample sample;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view trimmed = ginipop::detail::trim(line);
    if (trimmed.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(trimmed), &used);
      if (used != trimmed.size()) throw std::invalid_argument("trailing characters");
      sample.incomes.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": '" + std::string(trimmed) +
                               "' is not a number");
    }
  }
  if (sample.incomes.empty()) throw std::runtime_error("no incomes supplied");
  return sample;
}

inline nlohmann::json fit_to_json(const TargetGiniModel& m) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t j = 0; j < m.fit.coefficients.size(); ++j) {
    coeffs.push_back({{"name", m.fit.names[j]},
                      {"coefficient", m.fit.coefficients[j]},
                      {"std_error", m.fit.std_errors[j]},
                      {"t_stat", m.fit.t_stats[j]},
                      {"p_value", m.fit.p_values[j]}});
  }
  return {{"n_obs", m.fit.n_obs},
          {"hc_variant", to_string(m.fit.hc_variant)},
          {"coefficients", coeffs},
          {"r_squared", m.fit.r_squared},
          {"adj_r_squared", m.fit.adj_r_squared},
          {"source_fingerprint", m.source_fingerprint},
          {"warnings", m.warnings}};
}

}  // namespace detail

/// Dispatch a parsed command. Results go to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 2 data/domain error, 3 reproduction mismatch.
inline int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::DumpData: {
        std::ostringstream buf;
        save_csv(bundled_reference(), buf);
        out << buf.str();
        return 0;
      }
      case Command::Gini: {
        const IncomeSample sample = detail::load_incomes(cfg, in);
        const double g = gini_coefficient(sample);
        if (cfg.format == OutputFormat::Json) {
          out << nlohmann::json{{"n", sample.incomes.size()}, {"gini", g}}.dump(2) << '\n';
        } else {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.6f", g);
          out << buf << '\n';
        }
        return 0;
      }
      case Command::SubsampleBias: {
        const IncomeSample sample = detail::load_incomes(cfg, in);
        if (cfg.k < 1) throw std::invalid_argument("subsample size must be >= 1");
        if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
        const SubsampleReport r = subsample_experiment(sample, static_cast<std::size_t>(cfg.k),
                                                       static_cast<std::size_t>(cfg.trials),
                                                       cfg.seed);
        if (cfg.format == OutputFormat::Json) {
          out << nlohmann::json{{"full_gini", r.full_gini},
                                {"subsample_size", r.subsample_size},
                                {"trials", r.trials},
                                {"skipped", r.skipped},
                                {"valid_trials", r.trials - r.skipped},
                                {"mean_subsample_gini", r.mean_subsample_gini},
                                {"stderr_of_mean", r.stderr_of_mean},
                                {"seed", cfg.seed}}
                     .dump(2)
              << '\n';
        } else {
          char buf[256];
          std::snprintf(buf, sizeof buf,
                        "full gini            %.6f\n"
                        "subsample size       %zu\n"
                        "trials               %zu\n"
                        "valid trials         %zu  (skipped %zu)\n"
                        "mean subsample gini  %.6f\n"
                        "std error of mean    %.6f\n",
                        r.full_gini, r.subsample_size, r.trials, r.trials - r.skipped, r.skipped,
                        r.mean_subsample_gini, r.stderr_of_mean);
          out << buf;
        }
        return 0;
      }
      case Command::Fit: {
        const Dataset d = detail::load_dataset(cfg);
        const TargetGiniModel m = fit_target_model(d, cfg.hc, !cfg.no_anchor);
        for (const std::string& w : m.warnings) err << "warning: " << w << '\n';
        if (cfg.format == OutputFormat::Json) {
          out << detail::fit_to_json(m).dump(2) << '\n';
        } else {
          render_fit_text(m.fit, out);
        }
        return 0;
      }
      case Command::Predict: {
        const Dataset d = detail::load_dataset(cfg);
        const TargetGiniModel m = fit_target_model(d, cfg.hc, !cfg.no_anchor);
        const Prediction p = predict(m, cfg.population);
        if (p.extrapolated)
          err << "note: population exceeds the largest value in the fitting data (extrapolation)\n";
        if (p.outside_bounds)
          err << "warning: prediction lies outside [0, (P-1)/P]\n";
        if (cfg.format == OutputFormat::Json) {
          out << nlohmann::json{{"population", cfg.population},
                                {"estimated_gini", p.value},
                                {"extrapolated", p.extrapolated},
                                {"outside_bounds", p.outside_bounds}}
                     .dump(2)
              << '\n';
        } else {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.3f",
                        ginipop::detail::round_half_away(p.value, 3));
          out << buf << '\n';
        }
        return 0;
      }
      case Command::Report: {
        const Dataset d = detail::load_dataset(cfg);
        const TargetGiniModel m = fit_target_model(d, cfg.hc, !cfg.no_anchor);
        const ClassificationReport r = build_report(m, d);
        if (cfg.format == OutputFormat::Json) {
          nlohmann::json rows = nlohmann::json::array();
          for (const ClassificationRow& row : r.rows) {
            nlohmann::json j{{"name", row.name},
                             {"population", row.population},
                             {"actual_gini", row.actual_gini},
                             {"estimated_gini", row.estimated_gini}};
            if (row.gap_defined) {
              j["percent_gap"] = row.percent_gap;
              j["band"] = to_string(row.band);
              j["direction"] = to_string(row.direction);
            } else {
              j["percent_gap"] = nullptr;
            }
            rows.push_back(std::move(j));
          }
          out << nlohmann::json{{"beta1", r.beta1},
                                {"beta2", r.beta2},
                                {"within_5_count", r.within5_count},
                                {"within_10_cumulative_count", r.within10_cumulative_count},
                                {"rows", rows}}
                     .dump(2)
              << '\n';
        } else if (cfg.format == OutputFormat::Csv) {
          std::ostringstream buf;
          render_csv(r, buf, cfg.sort);
          out << buf.str();
        } else {
          std::ostringstream buf;
          render_text(r, buf, cfg.sort);
          out << buf.str();
        }
        return 0;
      }
      case Command::Compare: {
        const Dataset d = detail::load_dataset(cfg);
        const FormComparison cmp = compare_forms(d, cfg.hc, !cfg.no_anchor);
        if (cfg.format == OutputFormat::Json) {
          nlohmann::json entries = nlohmann::json::array();
          for (const FormEntry& e : cmp.entries) {
            nlohmann::json j{{"form", e.form}, {"n_params", e.n_params}};
            if (e.error) {
              j["error"] = *e.error;
            } else {
              j["r_squared"] = e.r_squared;
              j["adj_r_squared"] = e.adj_r_squared;
            }
            entries.push_back(std::move(j));
          }
          out << nlohmann::json{{"entries", entries}, {"ranking", cmp.ranking}}.dump(2) << '\n';
        } else {
          std::ostringstream buf;
          render_forms_text(cmp, buf);
          out << buf.str();
        }
        return 0;
      }
      case Command::Reproduce: {
        const Dataset d = detail::load_dataset(cfg);
        const TargetGiniModel m = fit_target_model(d, cfg.hc, !cfg.no_anchor);
        const ReproductionSummary s = reproduction_check(m, d);
        if (cfg.format == OutputFormat::Json) {
          nlohmann::json cells = nlohmann::json::array();
          for (const CheckCell& c : s.cells)
            cells.push_back({{"label", c.label},
                             {"expected", c.expected},
                             {"actual", c.actual},
                             {"pass", c.pass}});
          out << nlohmann::json{{"cells", cells},
                                {"n_pass", s.n_pass},
                                {"n_fail", s.n_fail},
                                {"all_pass", s.all_pass}}
                     .dump(2)
              << '\n';
        } else {
          std::ostringstream buf;
          render_reproduction_text(s, buf, cfg.verbose);
          out << buf.str();
        }
        return s.all_pass ? 0 : 3;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ginipop::cli
