#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nbwalk {

enum class ErrorCode {
  InvalidParameter,
  MalformedGraph,
  UnsupportedGraph,
  NoLegalMove,
  InvalidState,
  LimitExceeded,
  InvalidInput,
  UnsupportedStructure,
  InsufficientData,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t step);

  ErrorCode code() const noexcept { return code_; }
  // Step index for NoLegalMove raised while sampling a path.
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);
[[noreturn]] void fail(ErrorCode code, const std::string& message, std::size_t step);

}  // namespace nbwalk
