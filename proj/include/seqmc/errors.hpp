#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seqmc {

/// Argument outside an operation's domain (bad n, s, p, alpha, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A finite sample source ran dry before the procedure stopped.
struct SourceExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precomputed boundary table is shorter than the run needs.
class BoundaryExhausted : public std::out_of_range {
 public:
  BoundaryExhausted(std::int64_t available, std::int64_t required)
      : std::out_of_range("boundary table covers " + std::to_string(available) +
                          " steps; extend it to at least " + std::to_string(required)),
        available_(available),
        required_(required) {}

  std::int64_t available() const noexcept { return available_; }
  std::int64_t required() const noexcept { return required_; }

 private:
  std::int64_t available_;
  std::int64_t required_;
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Data parsed fine but breaks a structural invariant (e.g. L_n >= U_n).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boundary file written by an incompatible format version.
struct VersionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace seqmc
