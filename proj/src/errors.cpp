#include "nbwalk/errors.hpp"

namespace nbwalk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::UnsupportedGraph: return "UnsupportedGraph";
    case ErrorCode::NoLegalMove: return "NoLegalMove";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorCode::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t step)
    : std::runtime_error(std::string(to_string(code)) + ": " + message + " (step " + std::to_string(step) + ")"),
      code_(code),
      step_(step) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void fail(ErrorCode code, const std::string& message, std::size_t step) { throw Error(code, message, step); }

}  // namespace nbwalk
