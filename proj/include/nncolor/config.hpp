#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nncolor/window.hpp"

namespace nncolor {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ValueKind { integer, number, string, number_list };

struct ConfigKey {
  std::string name;
  ValueKind kind;
  nlohmann::json default_value;
  double min = -1e300;              ///< inclusive lower bound for integer/number
  std::vector<std::string> choices = {};  ///< allowed values for string keys, empty = any
};

/// Every recognised key with its default. Keys match CLI flag names with '-' as '_'.
const std::vector<ConfigKey>& config_schema();

/// Validated experiment configuration. Unknown keys, wrong types, out-of-range values and
/// bad choices are rejected with std::invalid_argument naming the key.
class Config {
 public:
  /// All defaults.
  Config();
  static Config from_json(const nlohmann::json& j);
  static Config from_file(const std::string& path);

  /// Overwrites one key, re-validating it.
  void set(const std::string& key, const nlohmann::json& value);

  std::int64_t integer(const std::string& key) const;
  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }
  double number(const std::string& key) const;
  std::string string(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  Window window() const;

  const nlohmann::json& values() const { return values_; }
  /// FNV-1a 64 of the canonical JSON dump without out_dir and report, as 16 hex digits.
  std::string hash() const;

 private:
  nlohmann::json values_;
};

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace nncolor
