#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace qstates {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;

// Principal branch with arg in (-pi, pi]. std::complex keeps the sign of a
// zero imaginary part, so -c - 0i would land on arg -pi; fold it back.
inline cplx fold_negative_zero(cplx z) noexcept {
  return z.imag() == 0.0 ? cplx(z.real(), 0.0) : z;
}

inline cplx principal_log(cplx z) { return std::log(fold_negative_zero(z)); }

inline cplx principal_sqrt(cplx z) { return std::sqrt(fold_negative_zero(z)); }

inline cplx principal_pow(cplx z, cplx w) {
  if (z == cplx(0.0, 0.0)) {
    if (w == cplx(0.0, 0.0)) return 1.0;
    return w.real() > 0.0 ? cplx(0.0, 0.0) : cplx(INFINITY, 0.0);
  }
  return std::exp(w * principal_log(z));
}

inline double sign(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// |closed - reference| / max(|reference|, floor). The floor keeps quantities
/// that vanish by symmetry (<p> for real alpha) from inflating the ratio.
inline double relative_deviation(cplx closed, cplx reference, double floor = 1e-3) {
  return std::abs(closed - reference) / std::max(std::abs(reference), floor);
}

} // namespace qstates
