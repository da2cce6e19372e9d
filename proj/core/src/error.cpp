#include "fsot/error.hpp"

namespace fsot {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::empty_selection: return "empty-selection";
    case Errc::invalid_projection: return "invalid-projection";
    case Errc::config_degenerate: return "config-degenerate";
    case Errc::unsupported_dimension: return "unsupported-dimension";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::io: return "io";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace fsot
