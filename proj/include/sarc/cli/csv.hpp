#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sarc/eval/aggregate.hpp"

namespace sarc::cli {

// Plain comma-separated table with a header row. Fields never contain commas
// or quotes in the files this tool writes, so no quoting is supported.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
  // (x, y) pairs for rows whose y field is non-empty.
  eval::Curve curve(const std::string& x, const std::string& y) const;
  std::vector<double> numbers(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in, const std::string& source = "<input>");
CsvTable read_csv(const std::filesystem::path& path);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace sarc::cli
