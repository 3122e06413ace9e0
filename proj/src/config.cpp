#include "nncolor/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nncolor {

using nlohmann::json;

namespace {

std::vector<ConfigKey> build_schema() {
  const double ln50 = std::log(50.0);
  return {
      {"seed", ValueKind::integer, 1, 0},
      {"replicates", ValueKind::integer, 1, 1},
      {"topology", ValueKind::string, "torus", 0, {"plane", "torus"}},
      {"side", ValueKind::number, 1.0, 1e-12},
      {"t1", ValueKind::number, ln50},
      {"t2", ValueKind::number, ln50 + std::log(10.0)},
      {"resolution", ValueKind::integer, 256, 2},
      {"out_dir", ValueKind::string, "out"},
      {"mode", ValueKind::string, "spacetime", 0, {"elementary", "spacetime"}},
      {"seeds", ValueKind::string, "0.3,0.5;0.7,0.5"},
      {"n", ValueKind::integer, 10000, 2},
      {"steps", ValueKind::integer, 0, 0},
      {"until_t", ValueKind::number, 20.0, 0},
      {"chi_samples", ValueKind::integer, 100000, 0},
      {"level_b", ValueKind::number, 8.0, 0},
      {"area_samples", ValueKind::integer, 4000, 0},
      {"separation", ValueKind::number, 1.0, 0},
      {"t0", ValueKind::number, 0.0, 0},
      {"max_steps", ValueKind::integer, 10000, 1},
      {"t_from", ValueKind::number, std::log(400.0)},
      {"t_to", ValueKind::number, std::log(100.0)},
      {"n_init", ValueKind::integer, 400, 1},
      {"snapshot_times", ValueKind::number_list, json::array()},
      {"input_ppm", ValueKind::string, ""},
      {"scales", ValueKind::integer, 0, 0},
      {"report", ValueKind::string, ""},
  };
}

const ConfigKey& find_key(const std::string& name) {
  for (const ConfigKey& k : config_schema()) {
    if (k.name == name) return k;
  }
  throw std::invalid_argument("config: unknown key '" + name + "'");
}

json validated(const ConfigKey& k, const json& v) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("config: key '" + k.name + "' " + why);
  };
  auto check_min = [&](double x) {
    if (!std::isfinite(x)) fail("must be finite");
    if (x < k.min) fail("must be >= " + json(k.min).dump());
  };
  switch (k.kind) {
    case ValueKind::integer: {
      if (!v.is_number_integer()) fail("must be an integer");
      const auto x = v.get<std::int64_t>();
      check_min(static_cast<double>(x));
      return x;
    }
    case ValueKind::number: {
      if (!v.is_number()) fail("must be a number");
      const auto x = v.get<double>();
      check_min(x);
      return x;
    }
    case ValueKind::string: {
      if (!v.is_string()) fail("must be a string");
      const auto s = v.get<std::string>();
      if (!k.choices.empty()) {
        bool ok = false;
        for (const auto& c : k.choices) ok = ok || c == s;
        if (!ok) fail("has invalid value '" + s + "'");
      }
      return s;
    }
    case ValueKind::number_list: {
      if (!v.is_array()) fail("must be an array of numbers");
      json out = json::array();
      for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>())) fail("must hold finite numbers");
        out.push_back(e.get<double>());
      }
      return out;
    }
  }
  return v;
}

}  // namespace

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = build_schema();
  return schema;
}

Config::Config() : values_(json::object()) {
  for (const ConfigKey& k : config_schema()) values_[k.name] = k.default_value;
}

Config Config::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  Config c;
  for (const auto& [key, value] : j.items()) c.set(key, value);
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  return from_json(j);
}

void Config::set(const std::string& key, const json& value) {
  values_[key] = validated(find_key(key), value);
}

std::int64_t Config::integer(const std::string& key) const {
  find_key(key);
  return values_.at(key).get<std::int64_t>();
}

double Config::number(const std::string& key) const {
  find_key(key);
  return values_.at(key).get<double>();
}

std::string Config::string(const std::string& key) const {
  find_key(key);
  return values_.at(key).get<std::string>();
}

std::vector<double> Config::numbers(const std::string& key) const {
  find_key(key);
  return values_.at(key).get<std::vector<double>>();
}

Window Config::window() const {
  const double side = number("side");
  return Window(0.0, side, 0.0, side, parse_topology(string("topology")));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Config::hash() const {
  // Where results are written does not change them.
  json hashed = values_;
  hashed.erase("out_dir");
  hashed.erase("report");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(hashed.dump())));
  return buf;
}

}  // namespace nncolor
