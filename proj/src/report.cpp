// Copyright 2026 the regvar-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "regvar/report.hpp"

#include <cmath>
#include <cstdio>

#include "regvar/errors.hpp"

namespace regvar {

std::string format_g17(double v) {
  char buf[40];
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json Json::object() { Json j; j.kind_ = Kind::object; return j; }
Json Json::array() { Json j; j.kind_ = Kind::array; return j; }
Json Json::number(double v) { Json j; j.kind_ = Kind::number; j.num_ = v; return j; }
Json Json::integer(std::int64_t v) { Json j; j.kind_ = Kind::integer; j.int_ = v; return j; }
Json Json::uinteger(std::uint64_t v) { Json j; j.kind_ = Kind::uinteger; j.uint_ = v; return j; }
Json Json::boolean(bool v) { Json j; j.kind_ = Kind::boolean; j.bool_ = v; return j; }
Json Json::string(std::string v) { Json j; j.kind_ = Kind::string; j.str_ = std::move(v); return j; }

Json& Json::put(const std::string& key, Json v) {
  if (kind_ != Kind::object) throw DomainError("Json::put on a non-object");
  fields_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::array) throw DomainError("Json::push on a non-array");
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, bool pretty) {
  if (!pretty) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, bool pretty) const {
  switch (kind_) {
    case Kind::number: out += format_g17(num_); return;
    case Kind::integer: out += std::to_string(int_); return;
    case Kind::uinteger: out += std::to_string(uint_); return;
    case Kind::boolean: out += bool_ ? "true" : "false"; return;
    case Kind::string: write_escaped(out, str_); return;
    case Kind::object: {
      if (fields_.empty()) { out += "{}"; return; }
      out += '{';
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        newline_indent(out, indent + 1, pretty);
        write_escaped(out, fields_[i].first);
        out += pretty ? ": " : ":";
        fields_[i].second.write(out, indent + 1, pretty);
        if (i + 1 < fields_.size()) out += ',';
      }
      newline_indent(out, indent, pretty);
      out += '}';
      return;
    }
    case Kind::array: {
      if (items_.empty()) { out += "[]"; return; }
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        newline_indent(out, indent + 1, pretty);
        items_[i].write(out, indent + 1, pretty);
        if (i + 1 < items_.size()) out += ',';
      }
      newline_indent(out, indent, pretty);
      out += ']';
      return;
    }
  }
}

std::string Json::dump(bool pretty) const {
  std::string out;
  write(out, 0, pretty);
  if (pretty) out += '\n';
  return out;
}

}  // namespace regvar
