#pragma once

#include <functional>

#include "qstates/specfun.hpp"

namespace qstates::detail {

struct BetaIntegral {
  Scaled value;
  double rel_err = 0.0;
  long evaluations = 0;
};

/// int_0^1 u^{p-1} (1-u)^{r-1} exp(log_g(u)) du for Re p, Re r > 0.
/// Endpoint power singularities are mapped away and the integrand is
/// normalized by its sampled peak before integrating.
BetaIntegral beta_weighted_integral(const std::function<cplx(double)>& log_g, cplx p, cplx r,
                                    double tol);

} // namespace qstates::detail
