#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rhsharp/ext_real.hpp"

namespace rhsharp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

using Value = std::variant<double, ExtReal, long long, std::string>;

/// One output row: inputs first, then outputs, in insertion order.
class Record {
public:
  Record& add(std::string key, Value v) {
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
  }
  [[nodiscard]] const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }

private:
  std::vector<std::pair<std::string, Value>> fields_;
};

enum class Format { Plain, Csv, Json };

Format parse_format(const std::string& name);

/// 17 significant digits; +inf (either ExtReal or IEEE) is the token "inf".
std::string format_value(const Value& v);

/// Plain: `key = value` lines for a single record, a space-separated table
/// with a header for several. Csv: one header row, LF endings. Json: one
/// object per line, with "inf" as a string.
void write_records(std::ostream& out, const std::vector<Record>& records, Format fmt);

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rhsharp::cli
