#include "basisrisk/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "basisrisk/errors.hpp"

namespace basisrisk {

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> parse_record(std::istream& in, bool& got_record) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  got_record = any;
  if (any) fields.push_back(std::move(field));
  return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::not_found, "cannot open file: " + path);
  CsvTable table;
  bool got = false;
  table.header = parse_record(in, got);
  if (!got || table.header.empty())
    throw Error(ErrorKind::schema, "empty CSV file: " + path);
  while (true) {
    auto fields = parse_record(in, got);
    if (!got) break;
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::parse,
                  path + ": row " + std::to_string(table.rows.size() + 2) +
                      " has " + std::to_string(fields.size()) +
                      " fields, expected " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(ErrorKind::parse,
                "cannot parse number '" + field + "' at " + context);
  }
  return value;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out += "\"";
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << '\n';
}

}  // namespace basisrisk
