#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace basisrisk {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position for `name`, or nullopt.
  std::optional<std::size_t> column(const std::string& name) const;
};

/// Reads a comma-separated file with a header row. Handles quoted fields with
/// doubled-quote escapes and trailing \r; embedded newlines inside quotes are
/// supported.
CsvTable read_csv(const std::string& path);

/// Shortest decimal representation that round-trips the exact double
/// (std::to_chars). NaN renders as an empty field.
std::string format_double(double value);

/// Parses a double from a full field; throws Error{parse} on trailing junk or
/// empty input. `context` names the offending cell in the message.
double parse_double(const std::string& field, const std::string& context);

/// Quotes a field only when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace basisrisk
