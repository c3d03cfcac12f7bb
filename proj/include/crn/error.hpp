#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

/// Base class for all recoverable errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed network text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An analysis precondition did not hold (not weakly reversible, not a siphon, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Integration failed; carries the last accepted state.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, double t, std::vector<double> last_state)
      : Error(what), t_(t), last_state_(std::move(last_state)) {}

  double time() const { return t_; }
  const std::vector<double>& last_state() const { return last_state_; }

 private:
  double t_;
  std::vector<double> last_state_;
};

}  // namespace crn
