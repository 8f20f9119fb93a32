#include "seqmc/boundary_io.hpp"

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqmc/csm.hpp"
#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"
#include "seqmc/simctest.hpp"
#include "seqmc/spending.hpp"

namespace seqmc {

void save_boundaries(const BoundaryPair& bounds, std::ostream& out) {
  const auto& meta = bounds.meta();
  std::string text;
  text += "#version=" + std::to_string(meta.version) + "\n";
  text += "#method=" + meta.method + "\n";
  text += "#alpha=" + format_double(meta.alpha) + "\n";
  text += "#epsilon=" + format_double(meta.epsilon) + "\n";
  text += "#spending=" + meta.spending + "\n";
  const auto lo = bounds.lower_values();
  const auto up = bounds.upper_values();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    text += std::to_string(i + 1);
    text += ',';
    text += std::to_string(lo[i]);
    text += ',';
    text += std::to_string(up[i]);
    text += '\n';
  }
  out << text;
  if (!out) throw std::runtime_error("failed writing boundary table");
}

void save_boundaries(const BoundaryPair& bounds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  save_boundaries(bounds, out);
}

namespace {

bool plain_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  if (i == 1 && s == "-0") return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Step row_integer(std::string_view s, std::size_t line) {
  if (!plain_integer(s)) throw ParseError(line, "expected a plain decimal integer, got '" + std::string(s) + "'");
  try {
    return parse_int(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, "integer out of range: '" + std::string(s) + "'");
  }
}

std::string_view header_value(std::string_view line, std::string_view key, std::size_t lineno) {
  const std::string prefix = "#" + std::string(key) + "=";
  if (line.substr(0, prefix.size()) != prefix) {
    throw ParseError(lineno, "expected header '" + prefix + "...'");
  }
  return line.substr(prefix.size());
}

StepBounds implied_first_row(const BoundaryMeta& meta) {
  TestConfig cfg{meta.alpha, meta.epsilon, std::nullopt};
  if (meta.method == "csm") return csm_boundaries(1, cfg).at(1);
  const SpendingSequence seq = parse_spending(meta.spending, meta.epsilon);
  return simctest_boundaries(1, cfg, seq).bounds.at(1);
}

}  // namespace

void validate_boundaries(const BoundaryPair& bounds) {
  const auto& meta = bounds.meta();
  if (meta.version != kBoundaryFormatVersion) {
    throw VersionMismatch("boundary format version " + std::to_string(meta.version) + " (expected " +
                          std::to_string(kBoundaryFormatVersion) + ")");
  }
  if (meta.method != "csm" && meta.method != "simctest") {
    throw InvariantViolation("unknown boundary method '" + meta.method + "'");
  }
  if (!(meta.alpha > 0.0 && meta.alpha < 1.0) || !(meta.epsilon > 0.0 && meta.epsilon < 1.0)) {
    throw InvariantViolation("alpha and epsilon must lie in (0,1)");
  }
  bool monotone = true;
  if (meta.method == "csm") {
    if (meta.spending != "none") throw InvariantViolation("csm boundaries must have spending 'none'");
  } else {
    try {
      monotone = parse_spending(meta.spending, meta.epsilon).monotone_boundaries();
    } catch (const PreconditionError& e) {
      throw InvariantViolation(e.what());
    }
  }
  if (bounds.n_max() < 1) throw InvariantViolation("boundary table is empty");

  for (Step n = 1; n <= bounds.n_max(); ++n) {
    const StepBounds b = bounds.at(n);
    const std::string at = " at n=" + std::to_string(n);
    if (b.lower >= b.upper) throw InvariantViolation("L_n >= U_n" + at);
    if (b.lower < -1 || b.upper > n + 1) throw InvariantViolation("boundary outside [-1, n+1]" + at);
    if (monotone && n > 1) {
      const StepBounds prev = bounds.at(n - 1);
      if (b.lower < prev.lower || b.upper < prev.upper) throw InvariantViolation("boundary decreased" + at);
    }
  }
  if (bounds.at(1) != implied_first_row(meta)) {
    throw InvariantViolation("first row does not match the boundaries implied by the header");
  }
}

BoundaryPair load_boundaries(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  std::vector<std::string_view> lines;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    if (nl == std::string_view::npos) {
      throw ParseError(lines.size() + 1, "line is not newline-terminated (truncated file?)");
    }
    lines.push_back(rest.substr(0, nl));
    rest.remove_prefix(nl + 1);
  }
  static constexpr std::string_view kKeys[] = {"version", "method", "alpha", "epsilon", "spending"};
  std::string_view values[5];
  for (std::size_t i = 0; i < 5; ++i) {
    if (i >= lines.size()) throw ParseError(i + 1, "missing header line '#" + std::string(kKeys[i]) + "='");
    values[i] = header_value(lines[i], kKeys[i], i + 1);
    if (i > 0) continue;
    // Version first: later header lines may mean something else in other versions.
    if (!plain_integer(values[0])) throw ParseError(1, "bad version '" + std::string(values[0]) + "'");
    if (values[0] != std::to_string(kBoundaryFormatVersion)) {
      throw VersionMismatch("boundary format version " + std::string(values[0]) + " (expected " +
                            std::to_string(kBoundaryFormatVersion) + ")");
    }
  }

  BoundaryMeta meta;
  meta.version = kBoundaryFormatVersion;
  meta.method = std::string(values[1]);
  if (meta.method != "csm" && meta.method != "simctest") {
    throw ParseError(2, "method must be csm or simctest");
  }
  try {
    meta.alpha = parse_double(values[2]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(3, e.what());
  }
  try {
    meta.epsilon = parse_double(values[3]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(4, e.what());
  }
  meta.spending = std::string(values[4]);
  if (meta.spending.empty()) throw ParseError(5, "empty spending descriptor");

  std::vector<Step> lower, upper;
  lower.reserve(lines.size() - 5);
  upper.reserve(lines.size() - 5);
  for (std::size_t i = 5; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view row = lines[i];
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(lineno, "expected 'n,L_n,U_n'");
    }
    const Step n = row_integer(row.substr(0, c1), lineno);
    const Step expected = static_cast<Step>(i - 4);
    if (n != expected) {
      throw ParseError(lineno, "expected step " + std::to_string(expected) + ", got " + std::to_string(n));
    }
    lower.push_back(row_integer(row.substr(c1 + 1, c2 - c1 - 1), lineno));
    upper.push_back(row_integer(row.substr(c2 + 1), lineno));
  }
  if (lower.empty()) throw ParseError(lines.size() + 1, "no boundary rows");

  BoundaryPair bounds(std::move(meta), std::move(lower), std::move(upper));
  validate_boundaries(bounds);
  return bounds;
}

BoundaryPair load_boundaries(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return load_boundaries(in);
}

}  // namespace seqmc
