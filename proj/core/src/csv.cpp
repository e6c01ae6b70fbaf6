#include "ginifield/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ginifield/errors.hpp"

namespace ginifield {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = strip(text);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

CsvColumns read_income_csv(const std::string& path,
                           const std::vector<std::string>& columns,
                           NonPositivePolicy policy) {
  std::ifstream file(path);
  if (!file) throw_error(ErrorCode::FileNotFound, path);

  std::string line;
  if (!std::getline(file, line)) {
    throw_error(ErrorCode::EmptySample, path + " has no header row");
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::vector<std::size_t> indices;
  for (const std::string& wanted : columns) {
    bool found = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (strip(header[i]) == wanted) {
        indices.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) {
      throw_error(ErrorCode::MissingColumn, "column '" + wanted + "' not in " + path);
    }
  }

  CsvColumns out;
  out.names = columns;
  out.values.resize(columns.size());
  std::size_t line_number = 1;  // header was line 1
  while (std::getline(file, line)) {
    ++line_number;
    if (strip(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    std::vector<double> row(columns.size());
    bool ok = true;
    std::string why;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (indices[c] >= fields.size() || !parse_double(fields[indices[c]], row[c])) {
        ok = false;
        why = "unparseable value in column '" + columns[c] + "'";
        break;
      }
      if (!(row[c] > 0.0) || !std::isfinite(row[c])) {
        ok = false;
        why = "nonpositive value " + std::to_string(row[c]) + " in column '" +
              columns[c] + "'";
        break;
      }
    }
    if (ok) {
      ++out.rows_read;
      for (std::size_t c = 0; c < columns.size(); ++c) out.values[c].push_back(row[c]);
      continue;
    }
    if (policy == NonPositivePolicy::Reject) {
      throw_error(ErrorCode::NonPositiveValue,
                  why + " at line " + std::to_string(line_number) + " of " + path);
    }
    ++out.rows_dropped;
    out.warnings.push_back("dropped line " + std::to_string(line_number) + ": " + why);
  }
  if (out.rows_read == 0) {
    throw_error(ErrorCode::EmptyAfterFilter, "no usable rows in " + path);
  }
  return out;
}

EmpiricalDistribution parse_income_csv(const std::string& path, const std::string& column,
                                       NonPositivePolicy policy, CsvColumns* details) {
  CsvColumns cols = read_income_csv(path, {column}, policy);
  EmpiricalDistribution dist = make_distribution(cols.values[0]);
  if (details != nullptr) *details = std::move(cols);
  return dist;
}

PairedSample parse_paired_csv(const std::string& path, const std::string& column1,
                              const std::string& column2, NonPositivePolicy policy,
                              CsvColumns* details) {
  CsvColumns cols = read_income_csv(path, {column1, column2}, policy);
  PairedSample paired = make_paired_sample(cols.values[0], cols.values[1]);
  if (details != nullptr) *details = std::move(cols);
  return paired;
}

void write_lorenz_csv(const std::string& path,
                      const std::vector<std::pair<double, double>>& points) {
  std::ofstream file(path);
  if (!file) throw_error(ErrorCode::FileNotFound, "cannot open " + path + " for writing");
  file << "p,L\n";
  file.precision(17);
  for (const auto& [p, l] : points) file << p << "," << l << "\n";
}

}  // namespace ginifield
