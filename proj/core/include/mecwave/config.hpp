#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mecwave/harness.hpp"

namespace mecwave {

// Parsed value of the TOML subset accepted in config files: numbers, booleans,
// basic strings and single-line arrays of those.
struct ConfigValue {
  enum class Kind { number, boolean, string, array };
  Kind kind = Kind::number;
  double number = 0.0;
  bool integral = false;  // the token had no fraction or exponent
  std::int64_t integer = 0;
  bool boolean = false;
  std::string text;
  std::vector<ConfigValue> items;
  int line = 0;
};

// section -> key -> value. Keys before any [section] live under "".
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

ConfigTable parse_config_table(const std::string& text);

// Unit conversions (dBm, MHz, GHz, KB, mW) happen here; everything returned is SI.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::string& path);

// Canonical config text for a spec, in the same units as the shipped default.
std::string dump_config(const ExperimentSpec& spec);

}  // namespace mecwave
