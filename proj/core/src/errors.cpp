#include "qstates/errors.hpp"

namespace qstates {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
  case Errc::invalid_argument: return "InvalidArgument";
  case Errc::parameter_pole: return "ParameterPole";
  case Errc::divergent_series: return "DivergentSeries";
  case Errc::not_converged: return "NotConverged";
  case Errc::branch_crossing: return "BranchCrossing";
  case Errc::slow_decay: return "SlowDecay";
  case Errc::pole_hit: return "PoleHit";
  case Errc::convention_mismatch: return "ConventionMismatch";
  case Errc::out_of_validity_window: return "OutOfValidityWindow";
  case Errc::zero_amplitude: return "ZeroAmplitude";
  case Errc::regime_warning: return "RegimeWarning";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace qstates
