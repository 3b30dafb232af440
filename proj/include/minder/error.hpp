#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minder {

enum class ErrorCode {
  RingMismatch,
  IndexOutOfRange,
  InvalidArgument,
  Parse,
  UnknownVariable,
  Precondition,
  SingularLinearPart,
  DegenerateBasis,
  Divisibility,
  ZeroDerivation,
  NoMinimalMFound,
  FoldFailed,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error; `position` is a byte offset into a polynomial string or, for
/// manifests, a line number. `detail()` is the message without the position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& detail, std::size_t position)
      : Error(code, detail + " at position " + std::to_string(position)),
        detail_(detail),
        position_(position) {}

  const std::string& detail() const noexcept { return detail_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string detail_;
  std::size_t position_;
};

}  // namespace minder
