// error.hpp - error kinds raised across the kernel
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgcalc {

enum class ErrorKind {
  invalid_argument,
  invalid_group,
  numeric_failure,
  truncation_error,
  refine_needed,
  chart_degenerate,
  singular_point,
  degenerate_input,
  precondition_violation,
  invalid_field,
  config_error,
  io_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hgcalc
