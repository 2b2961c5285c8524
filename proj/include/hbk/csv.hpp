#pragma once

// Tabular output: every cell keeps its printed text (CSV) and a typed value (JSON).

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hbk/errors.hpp"

namespace hbk {

/// printf-style rendering; glibc rounds half to even on the exact binary value.
inline std::string format_fixed(double x, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string format_sig(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

struct Cell {
  std::string text;
  nlohmann::ordered_json value;

  static Cell fixed(double x, int decimals = 6) { return {format_fixed(x, decimals), x}; }
  static Cell sig(double x, int digits = 12) { return {format_sig(x, digits), x}; }
  static Cell integer(long long x) { return {std::to_string(x), x}; }
  static Cell boolean(bool b) { return {b ? "true" : "false", b}; }
  static Cell str(std::string s) { return {s, s}; }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw std::logic_error("Table: row width does not match header");
    rows.push_back(std::move(row));
  }
};

using CsvRows = std::vector<std::vector<std::string>>;

namespace detail {

inline void check_field(std::string_view f) {
  if (f.find_first_of(",\"\n\r") != std::string_view::npos)
    throw precondition_error("csv: field needs quoting: " + std::string(f));
}

}  // namespace detail

/// Header line plus one line per row, '\n' terminated; fields are never quoted.
inline std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const auto& fields, auto&& get) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& f = get(fields[i]);
      detail::check_field(f);
      if (i) out += ',';
      out += f;
    }
    out += '\n';
  };
  line(t.header, [](const std::string& s) -> const std::string& { return s; });
  for (const auto& r : t.rows) line(r, [](const Cell& c) -> const std::string& { return c.text; });
  return out;
}

/// Inverse of to_csv: first row is the header.
inline CsvRows parse_csv(std::string_view text) {
  CsvRows rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') throw domain_error("csv: CRLF line endings are not accepted");
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && fields.size() != rows.front().size()) throw domain_error("csv: ragged row");
    rows.push_back(std::move(fields));
    pos = end + 1;
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < r.size(); ++i) obj[t.header[i]] = r[i].value;
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace hbk
