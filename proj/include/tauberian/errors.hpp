#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

enum class Errc {
  invalid_argument,
  ordering_violation,
  integrability_violation,
  dual_undefined,
  log_undefined,
  budget_exceeded,
  domain_too_small,
  fit_degenerate,
  degenerate_weight,
  invalid_resolution,
  unsupported_geometry,
  division_degenerate,
  parse_error,
};

const char* errc_name(Errc code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool condition, Errc code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace tlab
