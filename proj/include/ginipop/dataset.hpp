#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ginipop/gini.hpp"

namespace ginipop {

/// One country observation: population headcount and observed Gini.
struct CountryRecord {
  std::string name;
  std::int64_t population = 0;
  double gini = 0.0;

  bool operator==(const CountryRecord&) const = default;
};

inline constexpr std::string_view kAnchorName = "Hypothetical Country";

inline void validate_record(const CountryRecord& r, const std::string& where) {
  if (r.name.empty()) throw std::invalid_argument(where + ": name is empty");
  if (r.population < 1) throw std::invalid_argument(where + ": population must be >= 1");
  if (!(r.gini >= 0.0) || r.gini >= 1.0)
    throw std::invalid_argument(where + ": gini must lie in [0, 1)");
  const double bound = max_gini(r.population);
  if (r.gini > bound) {
    std::ostringstream msg;
    msg << where << ": gini " << r.gini << " exceeds (P-1)/P = " << bound
        << " for population " << r.population;
    throw std::invalid_argument(msg.str());
  }
}

namespace detail {

inline std::string fold_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Ordered, validated collection of country records. Immutable once built;
/// free to share across threads.
class Dataset {
 public:
  Dataset() = default;

  /// Validates every record, rejects duplicate names (case-insensitive)
  /// and more than one population-1 row.
  static Dataset from_records(std::vector<CountryRecord> records) {
    std::unordered_set<std::string> seen;
    std::size_t anchor_rows = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string where = "record " + std::to_string(i + 1) + " (" + records[i].name + ")";
      validate_record(records[i], where);
      if (!seen.insert(detail::fold_case(records[i].name)).second)
        throw std::invalid_argument(where + ": duplicate country name");
      if (records[i].population == 1) ++anchor_rows;
    }
    if (anchor_rows > 1)
      throw std::invalid_argument("dataset has more than one population-1 observation");
    Dataset d;
    d.records_ = std::move(records);
    d.includes_anchor_ = anchor_rows == 1;
    return d;
  }

  const std::vector<CountryRecord>& records() const { return records_; }
  bool includes_anchor() const { return includes_anchor_; }
  std::size_t size() const { return records_.size(); }

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<CountryRecord> records_;
  bool includes_anchor_ = false;
};

/// Returns d with the hypothetical one-person, zero-Gini observation
/// appended; already-anchored datasets come back unchanged.
inline Dataset with_anchor(const Dataset& d) {
  if (d.includes_anchor()) return d;
  std::vector<CountryRecord> records = d.records();
  records.push_back({std::string(kAnchorName), 1, 0.0});
  return Dataset::from_records(std::move(records));
}

struct CsvParseOptions {
  // reserved for future dialect switches; the schema is fixed
};

namespace detail {

// Minimal RFC-4180 field splitter: quoted fields may contain commas and
// doubled quotes.
inline std::vector<std::string> split_csv_row(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted)
    throw std::invalid_argument("row " + std::to_string(row) + ": unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string shortest_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parse `name,population,gini` CSV (UTF-8, '.' decimal point, extra columns
/// ignored). Errors carry the 1-based file row number; the header is row 1.
inline Dataset load_csv(std::istream& in, const CsvParseOptions& = {}) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty input: expected a header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = detail::split_csv_row(line, 1);
  if (header.size() < 3 || detail::trim(header[0]) != "name" ||
      detail::trim(header[1]) != "population" || detail::trim(header[2]) != "gini") {
    throw std::invalid_argument("row 1: header must start with name,population,gini");
  }

  std::vector<CountryRecord> records;
  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "row " + std::to_string(row);
    const std::vector<std::string> fields = detail::split_csv_row(line, row);
    if (fields.size() < 3)
      throw std::invalid_argument(where + ": expected at least 3 fields, got " +
                                  std::to_string(fields.size()));

    CountryRecord rec;
    rec.name = std::string(detail::trim(fields[0]));
    if (rec.name.empty()) throw std::invalid_argument(where + ", field name: empty");

    const std::string_view pop_text = detail::trim(fields[1]);
    const auto pop_res = std::from_chars(pop_text.data(), pop_text.data() + pop_text.size(),
                                         rec.population);
    if (pop_res.ec != std::errc{} || pop_res.ptr != pop_text.data() + pop_text.size())
      throw std::invalid_argument(where + ", field population: '" + std::string(pop_text) +
                                  "' is not an integer");

    const std::string gini_text(detail::trim(fields[2]));
    try {
      std::size_t used = 0;
      rec.gini = std::stod(gini_text, &used);
      if (used != gini_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ", field gini: '" + gini_text + "' is not a number");
    }

    validate_record(rec, where);
    if (!seen.insert(detail::fold_case(rec.name)).second)
      throw std::invalid_argument(where + ", field name: duplicate country '" + rec.name + "'");
    records.push_back(std::move(rec));
  }
  return Dataset::from_records(std::move(records));
}

inline Dataset load_csv_string(const std::string& text) {
  std::istringstream in(text);
  return load_csv(in);
}

/// Writes the fixed schema with shortest round-trip formatting for gini,
/// so save followed by load reproduces the dataset exactly.
inline void save_csv(const Dataset& d, std::ostream& out) {
  out << "name,population,gini\n";
  for (const CountryRecord& r : d.records()) {
    out << detail::csv_quote(r.name) << ',' << r.population << ','
        << detail::shortest_double(r.gini) << '\n';
  }
}

/// FNV-1a over names, populations, and gini bit patterns; order-sensitive.
inline std::uint64_t fingerprint(const Dataset& d) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001B3ULL;
    }
  };
  for (const CountryRecord& r : d.records()) {
    mix(r.name.data(), r.name.size());
    const char sep = '\0';
    mix(&sep, 1);
    mix(&r.population, sizeof r.population);
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(r.gini);
    mix(&bits, sizeof bits);
  }
  return h;
}

/// The bundled 70-observation reference table (69 countries plus the
/// hypothetical one-person country), 2012 populations and Gini ratios.
inline const Dataset& bundled_reference() {
  static const Dataset dataset = Dataset::from_records({
      {"Albania", 2900489, 0.290},
      {"Argentina", 42095224, 0.425},
      {"Armenia", 2978339, 0.305},
      {"Austria", 8429991, 0.305},
      {"Belgium", 11128246, 0.276},
      {"Bulgaria", 7305888, 0.360},
      {"Belarus", 9464000, 0.260},
      {"Bolivia", 10238762, 0.467},
      {"Brazil", 202401584, 0.527},
      {"Bhutan", 743711, 0.387},
      {"Switzerland", 7996861, 0.316},
      {"Colombia", 46881018, 0.535},
      {"Costa Rica", 4654148, 0.486},
      {"Cyprus", 1129303, 0.343},
      {"Czech Republic", 10510785, 0.261},
      {"Djibouti", 853069, 0.451},
      {"Denmark", 5591572, 0.291},
      {"Dominican Republic", 10155036, 0.457},
      {"Ecuador", 15419493, 0.466},
      {"Spain", 46773055, 0.359},
      {"Estonia", 1322696, 0.332},
      {"Finland", 5413971, 0.271},
      {"France", 65639975, 0.331},
      {"United Kingdom", 63700300, 0.326},
      {"Georgia", 3825000, 0.414},
      {"Guinea", 11628767, 0.337},
      {"Greece", 11045011, 0.367},
      {"Honduras", 7736131, 0.574},
      {"Haiti", 10288828, 0.608},
      {"Hungary", 9920362, 0.306},
      {"Ireland", 4586897, 0.325},
      {"Iraq", 32780975, 0.295},
      {"Iceland", 320716, 0.269},
      {"Italy", 59539717, 0.352},
      {"Kazakhstan", 16791425, 0.274},
      {"Kyrgyz Republic", 5607200, 0.274},
      {"Cambodia", 14832255, 0.308},
      {"Kosovo", 1805200, 0.294},
      {"Lao PDR", 6473050, 0.379},
      {"Sri Lanka", 20424000, 0.386},
      {"Lithuania", 2987773, 0.352},
      {"Luxembourg", 530946, 0.348},
      {"Latvia", 2034319, 0.355},
      {"Moldova", 3559519, 0.292},
      {"Mexico", 122070963, 0.481},
      {"Montenegro", 620601, 0.322},
      {"Mongolia", 2808339, 0.338},
      {"Mauritius", 1255882, 0.358},
      {"Netherlands", 16754962, 0.280},
      {"Norway", 5018573, 0.259},
      {"Panama", 3743761, 0.519},
      {"Peru", 30158768, 0.451},
      {"Philippines", 96017322, 0.430},
      {"Poland", 38063164, 0.324},
      {"Portugal", 10514844, 0.360},
      {"Paraguay", 6379162, 0.482},
      {"Romania", 20058035, 0.273},
      {"Russian Federation", 143201676, 0.416},
      {"El Salvador", 6072233, 0.418},
      {"Slovak Republic", 5407579, 0.261},
      {"Slovenia", 2057159, 0.256},
      {"Sweden", 9519374, 0.273},
      {"Thailand", 67164130, 0.393},
      {"Turkey", 74099255, 0.402},
      {"Uganda", 35400620, 0.424},
      {"Ukraine", 45593300, 0.247},
      {"Uruguay", 3396753, 0.413},
      {"Vietnam", 88809200, 0.387},
      {"Congo, Dem. Rep.", 70291160, 0.421},
      {"Hypothetical Country", 1, 0.000},
  });
  return dataset;
}

}  // namespace ginipop
