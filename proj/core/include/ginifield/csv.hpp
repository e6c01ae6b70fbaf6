#ifndef GINIFIELD_CSV_HPP
#define GINIFIELD_CSV_HPP

#include <string>
#include <vector>

#include "ginifield/empirical.hpp"

namespace ginifield {

enum class NonPositivePolicy { Reject, DropWithWarning };

struct CsvColumns {
  std::vector<std::string> names;                 // header order as requested
  std::vector<std::vector<double>> values;        // one vector per column
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::vector<std::string> warnings;
};

// Comma-separated, header row required, decimal point, UTF-8. Under Reject a
// nonpositive or malformed cell raises with its file line number; under
// DropWithWarning the row is skipped and counted.
CsvColumns read_income_csv(const std::string& path,
                           const std::vector<std::string>& columns,
                           NonPositivePolicy policy);

EmpiricalDistribution parse_income_csv(const std::string& path,
                                       const std::string& column,
                                       NonPositivePolicy policy,
                                       CsvColumns* details = nullptr);

PairedSample parse_paired_csv(const std::string& path, const std::string& column1,
                              const std::string& column2, NonPositivePolicy policy,
                              CsvColumns* details = nullptr);

void write_lorenz_csv(const std::string& path,
                      const std::vector<std::pair<double, double>>& points);

}  // namespace ginifield

#endif  // GINIFIELD_CSV_HPP
