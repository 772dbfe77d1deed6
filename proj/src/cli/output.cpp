#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "rhsharp/cli.hpp"

namespace rhsharp::cli {

namespace {

std::string format_double(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (std::isinf(x) && x > 0) return "inf";
          return x;
        } else if constexpr (std::is_same_v<T, ExtReal>) {
          if (x.is_inf()) return "inf";
          return x.value();
        } else {
          return x;
        }
      },
      v);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "plain") return Format::Plain;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or plain)");
}

std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, ExtReal>) {
          return x.is_inf() ? "inf" : format_double(x.value());
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else {
          return x;
        }
      },
      v);
}

void write_records(std::ostream& out, const std::vector<Record>& records, Format fmt) {
  if (records.empty()) return;
  switch (fmt) {
    case Format::Json:
      for (const auto& r : records) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.fields()) obj[k] = to_json(v);
        out << obj.dump() << '\n';
      }
      return;
    case Format::Plain:
      if (records.size() == 1) {
        for (const auto& [k, v] : records.front().fields()) out << k << " = " << format_value(v) << '\n';
        return;
      }
      [[fallthrough]];
    case Format::Csv: {
      const char sep = fmt == Format::Csv ? ',' : ' ';
      const auto& head = records.front().fields();
      for (std::size_t i = 0; i < head.size(); ++i) out << (i ? std::string(1, sep) : "") << head[i].first;
      out << '\n';
      for (const auto& r : records) {
        const auto& f = r.fields();
        for (std::size_t i = 0; i < f.size(); ++i) {
          out << (i ? std::string(1, sep) : "") << format_value(f[i].second);
        }
        out << '\n';
      }
      return;
    }
  }
}

}  // namespace rhsharp::cli
