#pragma once

#include <stdexcept>
#include <string>

namespace conflab {

/// Category attached to every library exception, so callers (and the CLI)
/// can branch on the failure kind without parsing messages.
enum class ErrorKind {
  Domain,
  Dimension,
  Membership,
  Representation,
  Shape,
  Precondition,
  Classification,
  Parse,
  Evaluation,
  TrajectoryEscape,
  NoReturn,
  Divergence,
  Conformality,
  NotInParabolic,
  Inconsistency,
  NormalFormUnavailable,
  Precision,
  InexactSqrt,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the metric parser; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// Raised when a metric is singular at an evaluation point.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& message, double determinant);
  double determinant() const noexcept { return determinant_; }

 private:
  double determinant_;
};

/// Raised when a trajectory leaves the chart domain.
class EscapeError : public Error {
 public:
  EscapeError(const std::string& message, double exit_time);
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

}  // namespace conflab
