#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgossip/sim.hpp"

namespace qgossip {

/// Flat `key = value` settings. Lines starting with '#' and blank lines are
/// ignored; keys outside the known set raise ConfigError.
class Config {
 public:
  static const std::vector<std::string>& known_keys();

  static Config parse(std::string_view text, std::string_view origin = "config");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  /// Accepts `key=value`.
  void apply_override(std::string_view assignment);
  /// Entries of `other` replace ours.
  void merge(const Config& other);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma separated integers, e.g. `10,20,40`.
  std::vector<std::size_t> get_size_list(const std::string& key,
                                         std::vector<std::size_t> fallback) const;
  /// Comma separated `lo:hi` pairs, e.g. `0:20,0:100`.
  std::vector<std::pair<double, double>> get_intervals(
      const std::string& key, std::vector<std::pair<double, double>> fallback) const;

  /// One `key = value` line per entry, keys sorted.
  std::string to_text() const;
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

GraphSpec graph_spec_from(const Config& cfg);
/// Every failure to interpret a value is reported as ConfigError.
TrialConfig trial_config_from(const Config& cfg);

}  // namespace qgossip
