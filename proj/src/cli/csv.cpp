#include "su12/cli/csv.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace su12::cli {

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header.size()) {
    throw std::logic_error("CSV row width does not match the header");
  }
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  for (const auto& line : provenance) {
    out << "# " << line << '\n';
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << '\n';
  }
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  write(f);
}

std::vector<std::string> provenance_lines(const std::string& command, const ParamSet& params, bool timestamp) {
  std::vector<std::string> lines{"command: " + command};
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    lines.push_back(std::string("generated: ") + buf);
  }
  for (const auto& [key, value] : params.entries()) {
    lines.push_back(key + " = " + value);
  }
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  for (const auto& line : lines) {
    f << line << '\n';
  }
}

}  // namespace su12::cli
