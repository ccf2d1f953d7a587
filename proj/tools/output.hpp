#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace erlang_spectral::cli {

enum class Format { Csv, Json, Text };

using Value = std::variant<double, long long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

inline std::string format_double(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Emits records in the chosen format. CSV takes its header from the first
// record of each block; a block ends when the key set changes.
class Writer {
 public:
  Writer(std::ostream& os, Format f) : os_(os), fmt_(f) {}

  void write(const Record& rec) {
    switch (fmt_) {
      case Format::Csv: write_csv(rec); break;
      case Format::Json: write_json(rec); break;
      case Format::Text: write_text(rec); break;
    }
  }

  void note(const std::string& line) {
    if (fmt_ == Format::Text) os_ << line << '\n';
  }

 private:
  static std::string csv_field(const Value& v) {
    if (auto d = std::get_if<double>(&v)) return format_double(*d, 12);
    if (auto i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  void write_csv(const Record& rec) {
    std::vector<std::string> keys;
    for (const auto& kv : rec) keys.push_back(kv.first);
    if (keys != header_) {
      if (!header_.empty()) os_ << '\n';
      header_ = keys;
      for (std::size_t i = 0; i < keys.size(); ++i) os_ << (i ? "," : "") << keys[i];
      os_ << '\n';
    }
    for (std::size_t i = 0; i < rec.size(); ++i) os_ << (i ? "," : "") << csv_field(rec[i].second);
    os_ << '\n';
  }

  void write_json(const Record& rec) {
    os_ << '{';
    for (std::size_t i = 0; i < rec.size(); ++i) {
      os_ << (i ? "," : "") << nlohmann::json(rec[i].first).dump() << ':';
      const Value& v = rec[i].second;
      if (auto d = std::get_if<double>(&v)) {
        os_ << (std::isfinite(*d) ? format_double(*d, 17) : "null");
      } else if (auto n = std::get_if<long long>(&v)) {
        os_ << *n;
      } else if (auto b = std::get_if<bool>(&v)) {
        os_ << (*b ? "true" : "false");
      } else {
        os_ << nlohmann::json(std::get<std::string>(v)).dump();
      }
    }
    os_ << "}\n";
  }

  void write_text(const Record& rec) {
    bool first = true;
    for (const auto& [k, v] : rec) {
      os_ << (first ? "" : "  ") << k << '=';
      if (auto d = std::get_if<double>(&v)) os_ << format_double(*d, 10);
      else os_ << csv_field(v);
      first = false;
    }
    os_ << '\n';
  }

  std::ostream& os_;
  Format fmt_;
  std::vector<std::string> header_;
};

}  // namespace erlang_spectral::cli
