#ifndef MAJORIZE_ERROR_HPP
#define MAJORIZE_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace majorize {

enum class ErrorCode {
  invalid_argument,
  length_mismatch,
  parse,
  domain,
  precondition,
  io,
};

// Every failure raised by the library. Parse and evaluation errors also carry
// the 1-based byte position in the source string they refer to.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(what), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace majorize

#endif
