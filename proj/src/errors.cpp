#include "tauberian/errors.hpp"

namespace tlab {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::ordering_violation: return "ordering-violation";
    case Errc::integrability_violation: return "integrability-violation";
    case Errc::dual_undefined: return "dual-undefined";
    case Errc::log_undefined: return "log-undefined";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::domain_too_small: return "domain-too-small";
    case Errc::fit_degenerate: return "fit-degenerate";
    case Errc::degenerate_weight: return "degenerate-weight";
    case Errc::invalid_resolution: return "invalid-resolution";
    case Errc::unsupported_geometry: return "unsupported-geometry";
    case Errc::division_degenerate: return "division-degenerate";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tlab
