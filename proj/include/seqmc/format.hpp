#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace seqmc {

/// Shortest decimal text that parses back to exactly `x` ("inf"/"-inf"/"nan" otherwise).
std::string format_double(double x);

/// Strict decimal parse of the whole string; throws std::invalid_argument.
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

enum class OutputFormat { csv, jsonl };

/// Fixed-column table emitted as CSV (header + rows) or JSON lines.
class Table {
 public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  /// Throws std::invalid_argument on a column-count mismatch.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& out, OutputFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace seqmc
