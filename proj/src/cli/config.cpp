#include "su12/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace su12::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParamSet::ParamSet(std::vector<std::pair<std::string, std::string>> defaults) : entries_(std::move(defaults)) {}

bool ParamSet::has(const std::string& key) const {
  for (const auto& kv : entries_) {
    if (kv.first == key) {
      return true;
    }
  }
  return false;
}

void ParamSet::set(const std::string& key, const std::string& value) {
  for (auto& kv : entries_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  throw ConfigError("unknown key '" + key + "'");
}

void ParamSet::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected KEY=VALUE, got '" + assignment + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void ParamSet::load_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.find('=') == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    apply_override(line);
  }
}

void ParamSet::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::stringstream buf;
  buf << f.rdbuf();
  load_text(buf.str());
}

const std::string& ParamSet::get(const std::string& key) const {
  for (const auto& kv : entries_) {
    if (kv.first == key) {
      return kv.second;
    }
  }
  throw ConfigError("unknown key '" + key + "'");
}

double ParamSet::get_double(const std::string& key) const {
  const std::string& s = get(key);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "' needs a finite number, got '" + s + "'");
  }
  return v;
}

int ParamSet::get_int(const std::string& key) const {
  const std::string& s = get(key);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v < -1000000000L || v > 1000000000L) {
    throw ConfigError("key '" + key + "' needs an integer, got '" + s + "'");
  }
  return static_cast<int>(v);
}

bool ParamSet::get_bool(const std::string& key) const {
  const std::string& s = get(key);
  if (s == "1" || s == "true" || s == "yes") {
    return true;
  }
  if (s == "0" || s == "false" || s == "no") {
    return false;
  }
  throw ConfigError("key '" + key + "' needs a boolean, got '" + s + "'");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> physics_defaults(double beta1, double beta2) {
  const std::string pi = format_number(std::numbers::pi);
  return {
      {"beta1", format_number(beta1)},
      {"beta2", format_number(beta2)},
      {"beta3", ""},
      {"beta4", ""},
      {"theta1", "0"},
      {"theta2", "0"},
      {"theta3", pi},
      {"theta4", pi},
      {"phi1", "0"},
      {"phi2", "0"},
      {"phi3", "0"},
      {"alpha1_re", "0"},
      {"alpha1_im", "0"},
      {"alpha2_re", "0"},
      {"alpha2_im", "0"},
      {"alpha3_re", "0"},
      {"alpha3_im", "0"},
  };
}

void resolve_balanced(ParamSet& params) {
  if (params.get("beta3").empty()) {
    params.set("beta3", params.get("beta2"));
  }
  if (params.get("beta4").empty()) {
    params.set("beta4", params.get("beta1"));
  }
}

InterferometerConfig interferometer_from(const ParamSet& params) {
  InterferometerConfig cfg;
  cfg.fwm1 = {params.get_double("beta1"), params.get_double("theta1"), ModePair::Modes12};
  cfg.fwm2 = {params.get_double("beta2"), params.get_double("theta2"), ModePair::Modes13};
  cfg.fwm3 = {params.get_double("beta3"), params.get_double("theta3"), ModePair::Modes13};
  cfg.fwm4 = {params.get_double("beta4"), params.get_double("theta4"), ModePair::Modes12};
  cfg.phases.phi = {params.get_double("phi1"), params.get_double("phi2"), params.get_double("phi3")};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

InputState input_from(const ParamSet& params) {
  InputState in;
  for (int k = 0; k < 3; ++k) {
    const std::string p = "alpha" + std::to_string(k + 1);
    in.alpha[k] = Complex(params.get_double(p + "_re"), params.get_double(p + "_im"));
  }
  return in;
}

}  // namespace su12::cli
