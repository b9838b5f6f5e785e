#pragma once

// Momentum-space amplitude <k|alpha,q> = (2 pi)^{-1/2} integral e^{-ikx} psi(x) dx
// and the momentum distribution |<k|alpha,q>|^2.

#include <optional>
#include <vector>

#include "qstates/complex.hpp"
#include "qstates/states.hpp"

namespace qstates {

struct MomentumSample {
  double k = 0.0;
  cplx amplitude{};
  double pd = 0.0;
  Method method = Method::oracle;
};

/// Fourier quadrature of the oracle-normalized state. 1 <= q < 5.
cplx momentum_amplitude_oracle(double q, cplx alpha, double k, double tol = 1e-9);

/// The Kummer closed form
///   Sgn(k) sqrt(2 pi) A |k|^{(3-q)/(q-1)} / Gamma(2/(q-1)) e^{-i pi Sgn(k)/(q-1)}
///   e^{i(sqrt2 alpha + sqrt w)} phi(1/(q-1), 2/(q-1); -2i sqrt(w) |k|),
/// w = alpha^2 - |alpha|^2 - 2/(q-1), evaluated exactly as written. At the
/// q = 1 sentinel the Gaussian amplitude is returned instead.
/// Requires k != 0 and 1 < q < 3 (or q = 1).
cplx momentum_amplitude_closed(double q, cplx alpha, double k);

/// |amplitude|^2 in the expanded form built from the two Kummer factors
/// (with conj(alpha) in the second). Complex in general; the imaginary part
/// is a diagnostic.
cplx momentum_pd_closed(double q, cplx alpha, double k);

/// Closed form next to the oracle.
CheckedValue momentum_amplitude_checked(double q, cplx alpha, double k, double tol = 1e-9);

/// Strict variant: Errc::convention_mismatch beyond kConventionTolerance.
cplx momentum_amplitude(double q, cplx alpha, double k, Method method, double tol = 1e-9);

/// 401 uniform points on [-8 - 2|alpha|, 8 + 2|alpha|] unless told otherwise.
std::vector<double> default_k_grid(cplx alpha, int points = 401);

struct MomentumPd {
  std::vector<MomentumSample> samples;
  // Oracle only: trapezoid integral of pd over the grid.
  std::optional<double> parseval;
};

MomentumPd momentum_pd(double q, cplx alpha, const std::vector<double>& k_grid, Method method,
                       double tol = 1e-9);

/// Trapezoid rule on a (possibly non-uniform) grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qstates
