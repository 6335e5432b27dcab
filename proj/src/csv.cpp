#include "mrs/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace mrs {

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << format_double(*row[i]);
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_csv(out, header, rows);
}

}  // namespace mrs
