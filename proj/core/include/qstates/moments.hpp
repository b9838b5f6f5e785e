#pragma once

// <x>, <x^2>, <p>, <p^2> and the uncertainty product of a normalized
// Tsallis pseudo-coherent state.

#include <optional>

#include "qstates/complex.hpp"
#include "qstates/states.hpp"

namespace qstates {

struct MomentDeviations {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;

  double max() const;
};

struct MomentReport {
  double q = 1.0;
  cplx alpha{};
  cplx mean_x{}, mean_x2{}, mean_p{}, mean_p2{};
  double var_x = 0.0;
  double var_p = 0.0;
  double product = 0.0;
  Method method = Method::oracle;
  // Closed form only: relative differences to the oracle report.
  std::optional<MomentDeviations> deviations;
  // Oracle only: relative difference between the -conj(psi) psi'' form of
  // <p^2> and the primary integral of |psi'|^2.
  double p2_crosscheck = 0.0;
};

/// Fills var_x, var_p and product from the means (real parts).
void finish_report(MomentReport& r);

/// Quadrature of |psi|^2 weighted by x and x^2, -i conj(psi) psi' and
/// |psi'|^2 with analytic derivatives. Errc::out_of_validity_window outside
/// 1 <= q < 7/3; Errc::not_converged if an expectation value comes out with
/// a non-negligible imaginary part.
MomentReport moments_oracle(double q, cplx alpha, double tol = 1e-10);

struct ClosedMomentOptions {
  // Throw Errc::convention_mismatch when a deviation exceeds
  // kConventionTolerance.
  bool strict = true;
  // Oracle report to compare against; computed when absent.
  const MomentReport* oracle = nullptr;
  double oracle_tol = 1e-10;
};

/// F_D closed forms under the calibrated convention; q = 1 returns the
/// coherent-state values.
MomentReport moments_closed(double q, cplx alpha, const ClosedMomentOptions& opts = {});

/// sqrt(<x^2> - <x>^2) sqrt(<p^2> - <p>^2) from the selected method.
double uncertainty_product(double q, cplx alpha, Method method, double tol = 1e-10);

} // namespace qstates
