// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace peekgrad {

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape_csv_field(std::string_view field);

using CsvRow = std::vector<std::string>;

/// RFC 4180 writer with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const CsvRow& fields);
  void row(std::initializer_list<std::string> fields) { row(CsvRow(fields)); }

 private:
  std::ostream& out_;
};

/// Parses RFC 4180 text (LF or CRLF records). Throws std::runtime_error on an
/// unterminated quoted field.
std::vector<CsvRow> parse_csv(std::string_view text);

}  // namespace peekgrad
