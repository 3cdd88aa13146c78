#include "hgcalc/error.hpp"

namespace hgcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_group: return "invalid-group";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::truncation_error: return "truncation-error";
    case ErrorKind::refine_needed: return "refine-needed";
    case ErrorKind::chart_degenerate: return "chart-degenerate";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::invalid_field: return "invalid-field";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace hgcalc
