#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsot {

enum class Errc {
  invalid_argument,
  empty_selection,
  invalid_projection,
  config_degenerate,
  unsupported_dimension,
  precondition_violated,
  io,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the optimizer, the CLI) can react to specific conditions such as
/// an empty subclass selection without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const char* message) {
  if (!condition) raise(code, message);
}

}  // namespace fsot
