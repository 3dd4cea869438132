#pragma once

#include <stdexcept>
#include <string>

namespace qtomo {

enum class ErrorCode {
  InvalidArgument,
  DivergentAmplitude,
  DegenerateState,
  TruncationOverflow,
  OrderTooHigh,
  IncompleteTable,
  IllConditioned,
  DegenerateAngles,
  InsufficientRule,
  EigenFailure,
  IncompatibleGrid,
  IoFailure,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what_arg)
      : std::runtime_error(what_arg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivergentAmplitude: return "DivergentAmplitude";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegenerateAngles: return "DegenerateAngles";
    case ErrorCode::InsufficientRule: return "InsufficientRule";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::IncompatibleGrid: return "IncompatibleGrid";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace qtomo
