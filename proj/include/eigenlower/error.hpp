#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenlower {

enum class ErrorKind {
  NonConvergence,
  NonFiniteSample,
  StepUnderflow,
  NonFiniteState,
  NoSignChange,
  InvalidDimension,
  InvalidArgument,
  OutOfTubeRange,
  HypothesisViolated,
  QTooSmall,
  InvalidCurvature,
  OdeSingularity,
  InvalidResolution,
  ParseError,
  NotClosed,
  NotUnitSphere,
  DegenerateTriangle,
  SolverStagnation,
  SingularShift,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfTubeRange: return "OutOfTubeRange";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::QTooSmall: return "QTooSmall";
    case ErrorKind::InvalidCurvature: return "InvalidCurvature";
    case ErrorKind::OdeSingularity: return "OdeSingularity";
    case ErrorKind::InvalidResolution: return "InvalidResolution";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotUnitSphere: return "NotUnitSphere";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::SolverStagnation: return "SolverStagnation";
    case ErrorKind::SingularShift: return "SingularShift";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Parse and usage failures map to exit code 2, everything else to 1.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::ParseError || kind_ == ErrorKind::NotClosed ||
           kind_ == ErrorKind::NotUnitSphere || kind_ == ErrorKind::InvalidArgument ||
           kind_ == ErrorKind::InvalidDimension || kind_ == ErrorKind::InvalidResolution;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace eigenlower
