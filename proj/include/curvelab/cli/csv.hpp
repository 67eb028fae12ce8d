#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvelab::cli {

/// Comma-separated row of shortest round-trip decimals.
void write_csv_row(std::ostream& out, const std::vector<double>& values);
void write_csv_header(std::ostream& out, const std::vector<std::string>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;
};

/// Inverse of the writers: '#' lines become comments, the first other line
/// is the header.
CsvTable read_csv(std::istream& in);

}  // namespace curvelab::cli
