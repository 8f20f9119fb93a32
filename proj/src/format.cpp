#include "seqmc/format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace seqmc {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const Table::Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

std::string json_value(const Table::Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no inf/nan literals.
    if (!std::isfinite(*d)) return "null";
    return format_double(*d);
  }
  if (std::holds_alternative<std::int64_t>(cell)) return cell_text(cell);
  std::string out = "\"";
  for (char c : std::get<std::string>(cell)) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

namespace {

std::string csv_field(std::string text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

void Table::write(std::ostream& out, OutputFormat format) const {
  if (format == OutputFormat::csv) {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(cell_text(row[c]));
      out << '\n';
    }
    return;
  }
  for (const auto& row : rows_) {
    out << '{';
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << '"' << columns_[c] << "\":" << json_value(row[c]);
    }
    out << "}\n";
  }
}

}  // namespace seqmc
