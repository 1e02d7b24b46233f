#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ca {

enum class ErrorCode {
  Parse,
  NotHomogeneous,
  DegreeLimit,
  ZeroModule,
  PdCutoff,
  NotSop,
  InfiniteIntersection,
  NotAComplex,
  TriesExhausted,
  DimMismatch,
  UnknownCheck,
  NotEquidim,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Exception carrying one of the engine's error codes.  what() is prefixed
/// with the code name, e.g. "E_PARSE: unknown variable 'w'".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace ca
