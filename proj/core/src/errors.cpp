#include "conflab/errors.hpp"

namespace conflab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Membership: return "membership";
    case ErrorKind::Representation: return "representation";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Classification: return "classification";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::TrajectoryEscape: return "trajectory-escape";
    case ErrorKind::NoReturn: return "no-return";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Conformality: return "conformality";
    case ErrorKind::NotInParabolic: return "not-in-P";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::NormalFormUnavailable: return "normal-form-unavailable";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::InexactSqrt: return "inexact-sqrt";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

EvaluationError::EvaluationError(const std::string& message, double determinant)
    : Error(ErrorKind::Evaluation, message + " (determinant " + std::to_string(determinant) + ")"),
      determinant_(determinant) {}

EscapeError::EscapeError(const std::string& message, double exit_time)
    : Error(ErrorKind::TrajectoryEscape, message + " at t=" + std::to_string(exit_time)),
      exit_time_(exit_time) {}

}  // namespace conflab
