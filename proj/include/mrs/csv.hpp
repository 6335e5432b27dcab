#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mrs {

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

// A missing value is written as an empty field.
using CsvRow = std::vector<std::optional<double>>;

void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<CsvRow>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

}  // namespace mrs
