#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "su12/cli/config.hpp"

namespace su12::cli {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Comment lines written before the header, without the leading "# ".
  std::vector<std::string> provenance;

  /// Throws std::logic_error if a row width differs from the header.
  void add_row(std::vector<double> row);
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;
};

/// "command: ...", optional "generated: ..." and one "key = value" line per parameter.
std::vector<std::string> provenance_lines(const std::string& command, const ParamSet& params, bool timestamp);

/// Writes `lines` to `path` with LF endings.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace su12::cli
