#include "lmoment/format.hpp"

#include <cmath>
#include <cstdio>

namespace lmoment {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_quote(std::string_view s) {
  std::string out = "\"";
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
  return out;
}

JsonObject& JsonObject::add(std::string_view key, double v) {
  fields_.emplace_back(std::string(key), std::isfinite(v) ? format_double(v) : "null");
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, std::int64_t v) {
  fields_.emplace_back(std::string(key), std::to_string(v));
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, bool v) {
  fields_.emplace_back(std::string(key), v ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::add(std::string_view key, std::string_view v) {
  fields_.emplace_back(std::string(key), json_quote(v));
  return *this;
}

JsonObject& JsonObject::add_strings(std::string_view key, const std::vector<std::string>& v) {
  std::string raw = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) raw += ", ";
    raw += json_quote(v[i]);
  }
  raw += "]";
  fields_.emplace_back(std::string(key), std::move(raw));
  return *this;
}

JsonObject& JsonObject::add_raw(std::string_view key, std::string raw) {
  fields_.emplace_back(std::string(key), std::move(raw));
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ", ";
    out += json_quote(fields_[i].first);
    out += ": ";
    out += fields_[i].second;
  }
  out += "}";
  return out;
}

}  // namespace lmoment
