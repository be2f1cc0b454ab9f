#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tfl {

// Flat `key = value` text with `#` comments. Later assignments win. Typed
// getters throw InvalidInput naming the key when a value does not parse.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return values_; }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma or whitespace separated reals.
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

  // Keys that no getter has asked for.
  std::vector<std::string> unused() const;
  // One `key = value` line per entry, sorted by key.
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> used_;
};

}  // namespace tfl
