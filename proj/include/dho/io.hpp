#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace dho {

/// All floating-point output uses exactly 17 significant digits in scientific
/// notation so that identical configs produce byte-identical files.
inline std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return std::string(buffer);
}

inline std::string format_int(long long value) { return std::to_string(value); }

inline std::string format_bool(bool value) { return value ? "1" : "0"; }

/// RFC-4180-style quoting: fields containing commas, quotes or newlines are wrapped
/// in double quotes with inner quotes doubled.
inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

/// Minimal streaming JSON writer with deterministic layout: keys appear in call
/// order, numbers use the fixed 17-digit format, no whitespace beyond single
/// spaces after separators.
class JsonWriter {
public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() {
    separator();
    out_ += '{';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_object() {
    out_ += '}';
    fresh_ = false;
    return *this;
  }
  JsonWriter& begin_array() {
    separator();
    out_ += '[';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_array() {
    out_ += ']';
    fresh_ = false;
    return *this;
  }

  JsonWriter& key(const std::string& name) {
    separator();
    out_ += quote(name);
    out_ += ": ";
    fresh_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(format_double(v)); }
  JsonWriter& value(long long v) { return raw(format_int(v)); }
  JsonWriter& value(std::size_t v) { return raw(format_int(static_cast<long long>(v))); }
  JsonWriter& value(int v) { return raw(format_int(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(const std::string& v) { return raw(quote(v)); }
  JsonWriter& value(const char* v) { return raw(quote(v)); }
  JsonWriter& null() { return raw("null"); }

private:
  static std::string quote(const std::string& s) {
    std::string quoted = "\"";
    for (const char c : s) {
      switch (c) {
        case '"': quoted += "\\\""; break;
        case '\\': quoted += "\\\\"; break;
        case '\n': quoted += "\\n"; break;
        case '\r': quoted += "\\r"; break;
        case '\t': quoted += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            quoted += buf;
          } else {
            quoted += c;
          }
      }
    }
    quoted += '"';
    return quoted;
  }

  void separator() {
    if (!fresh_ && !out_.empty()) {
      const char last = out_.back();
      if (last != '{' && last != '[' && last != ' ') {
        out_ += ", ";
      }
    }
  }

  JsonWriter& raw(const std::string& text) {
    separator();
    out_ += text;
    fresh_ = false;
    return *this;
  }

  std::string out_;
  bool fresh_ = true;
};

}  // namespace dho
