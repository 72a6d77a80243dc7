// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic JSON report writer: insertion-ordered keys, doubles rendered
// with %.17g, no locale dependence. Identical inputs produce byte-identical
// output, which the reproducibility contract depends on.

#ifndef REGVAR_REPORT_HPP
#define REGVAR_REPORT_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace regvar {

class Json {
 public:
  static Json object();
  static Json array();
  static Json number(double v);
  static Json integer(std::int64_t v);
  static Json uinteger(std::uint64_t v);
  static Json boolean(bool v);
  static Json string(std::string v);

  /// Object field (insertion order preserved); returns *this for chaining.
  Json& put(const std::string& key, Json v);
  Json& put(const std::string& key, double v) { return put(key, number(v)); }
  Json& put(const std::string& key, bool v) { return put(key, boolean(v)); }
  Json& put(const std::string& key, const std::string& v) { return put(key, string(v)); }
  Json& put(const std::string& key, const char* v) { return put(key, string(v)); }
  Json& put(const std::string& key, std::uint64_t v) { return put(key, uinteger(v)); }
  Json& put(const std::string& key, int v) { return put(key, integer(v)); }

  Json& push(Json v);
  Json& push(double v) { return push(number(v)); }

  /// Serialized text; pretty = 2-space indentation, else compact.
  std::string dump(bool pretty = true) const;

 private:
  enum class Kind { object, array, number, integer, uinteger, boolean, string };
  Kind kind_ = Kind::object;
  double num_ = 0.0;
  std::int64_t int_ = 0;
  std::uint64_t uint_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, Json>> fields_;
  std::vector<Json> items_;
  void write(std::string& out, int indent, bool pretty) const;
};

/// %.17g rendering used for every double in reports and CSV output.
std::string format_g17(double v);

/// %.12g rendering for the kernel-table dump (12 significant digits).
std::string format_g12(double v);

}  // namespace regvar

#endif  // REGVAR_REPORT_HPP
