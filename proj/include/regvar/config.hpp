// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef REGVAR_CONFIG_HPP
#define REGVAR_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace regvar {

/// Flat declarative key = value configuration. '#' starts a comment; values
/// keep internal spaces. Duplicate keys are errors; unknown keys are rejected
/// against a per-command schema at validation time.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text, const std::string& origin = "<text>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;
  /// "a:b, c:d" pairs (used for hole lists).
  std::vector<std::pair<double, double>> get_pair_list(const std::string& key) const;

  /// Throws ConfigError naming every key not in `allowed`.
  void require_known_keys(const std::set<std::string>& allowed) const;

  void set(const std::string& key, const std::string& value);

  /// Resolved entries in sorted key order (for the deterministic config echo).
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
  std::map<std::string, int> lines_;
  std::string origin_;
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;
};

}  // namespace regvar

#endif  // REGVAR_CONFIG_HPP
