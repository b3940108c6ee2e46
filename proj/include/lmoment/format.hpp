#ifndef LMOMENT_FORMAT_HPP
#define LMOMENT_FORMAT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lmoment {

/// %.17g, or "nan"/"inf"/"-inf".
std::string format_double(double v);

/// Flat JSON object with insertion-ordered fields; doubles use 17 significant digits
/// (non-finite doubles become null).
class JsonObject {
 public:
  JsonObject& add(std::string_view key, double v);
  JsonObject& add(std::string_view key, std::int64_t v);
  JsonObject& add(std::string_view key, int v) { return add(key, static_cast<std::int64_t>(v)); }
  JsonObject& add(std::string_view key, bool v);
  JsonObject& add(std::string_view key, std::string_view v);
  JsonObject& add(std::string_view key, const char* v) { return add(key, std::string_view(v)); }
  JsonObject& add_strings(std::string_view key, const std::vector<std::string>& v);
  /// Inserts pre-serialized JSON verbatim.
  JsonObject& add_raw(std::string_view key, std::string raw);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_quote(std::string_view s);

}  // namespace lmoment

#endif  // LMOMENT_FORMAT_HPP
