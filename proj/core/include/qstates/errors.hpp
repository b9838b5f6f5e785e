#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qstates {

enum class Errc {
  invalid_argument,
  parameter_pole,
  divergent_series,
  not_converged,
  branch_crossing,
  slow_decay,
  pole_hit,
  convention_mismatch,
  out_of_validity_window,
  zero_amplitude,
  regime_warning,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc codes above.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace qstates
