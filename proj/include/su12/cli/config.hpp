#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "su12/interferometer.hpp"

namespace su12::cli {

/// Bad config file, unknown key or unparsable value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered key/value parameters. Only keys present in the defaults are
/// accepted.
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(std::vector<std::pair<std::string, std::string>> defaults);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  /// "key=value" as given on the command line.
  void apply_override(const std::string& assignment);
  /// "key = value" lines; '#' starts a comment.
  void load_text(const std::string& text);
  void load_file(const std::string& path);

  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest decimal string that round-trips through %.17g.
std::string format_number(double v);

/// Gain/phase/amplitude keys shared by every physics command.
std::vector<std::pair<std::string, std::string>> physics_defaults(double beta1, double beta2);

/// Fills beta3/beta4 left empty with beta2/beta1 (balanced device).
void resolve_balanced(ParamSet& params);

InterferometerConfig interferometer_from(const ParamSet& params);
InputState input_from(const ParamSet& params);

}  // namespace su12::cli
