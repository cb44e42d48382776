#pragma once

#include <stdexcept>
#include <string>

namespace saislab {

enum class Errc {
  malformed_input,
  validation,
  multiple_terminal_components,
  singleton_terminal,
  degenerate_law,
  tail_too_large,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_input: return "malformed_input";
    case Errc::validation: return "validation";
    case Errc::multiple_terminal_components: return "multiple_terminal_components";
    case Errc::singleton_terminal: return "singleton_terminal";
    case Errc::degenerate_law: return "degenerate_law";
    case Errc::tail_too_large: return "tail_too_large";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace saislab
