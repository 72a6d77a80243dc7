// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/config.hpp"

#include <fstream>
#include <sstream>

#include "regvar/errors.hpp"

namespace regvar {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.kv_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                        key + "' (first at line " + std::to_string(cfg.lines_[key]) + ")");
    cfg.kv_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

void Config::fail(const std::string& key, const std::string& why) const {
  std::ostringstream os;
  os << origin_;
  const auto it = lines_.find(key);
  if (it != lines_.end()) os << ":" << it->second;
  os << ": key '" << key << "': " << why;
  throw ConfigError(os.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) fail(key, "required key missing");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(key, "expected a number, got '" + s + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string s = get_string(key);
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(key, "expected a nonnegative integer, got '" + s + "'");
  }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_u64(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(key, "expected true/false, got '" + s + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = strip(item);
    if (item.empty()) fail(key, "empty list item");
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(key, "bad list item '" + item + "'");
    }
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> fallback) const {
  return has(key) ? get_double_list(key) : std::move(fallback);
}

std::vector<std::pair<double, double>> Config::get_pair_list(const std::string& key) const {
  if (!has(key) || strip(get_string(key)).empty()) return {};
  const std::string s = get_string(key);
  std::vector<std::pair<double, double>> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = strip(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(key, "expected 'lo:hi' pairs, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string ls = strip(item.substr(0, colon));
      const std::string hs = strip(item.substr(colon + 1));
      const double lo = std::stod(ls, &used);
      if (used != ls.size()) throw std::invalid_argument(ls);
      const double hi = std::stod(hs, &used);
      if (used != hs.size()) throw std::invalid_argument(hs);
      out.emplace_back(lo, hi);
    } catch (const std::exception&) {
      fail(key, "bad pair '" + item + "'");
    }
  }
  return out;
}

void Config::require_known_keys(const std::set<std::string>& allowed) const {
  std::string unknown;
  for (const auto& [k, v] : kv_) {
    if (!allowed.count(k)) {
      if (!unknown.empty()) unknown += ", ";
      unknown += "'" + k + "'";
    }
  }
  if (!unknown.empty())
    throw ConfigError(origin_ + ": unknown key(s) " + unknown);
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

}  // namespace regvar
