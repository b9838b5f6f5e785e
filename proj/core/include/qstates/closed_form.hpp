#pragma once

// Lauricella F_D closed forms for the normalization, overlap and the four
// moments of a Tsallis pseudo-coherent state.
//
// Each closed form is a sum of terms
//   T(n; b) = integral x^n prod_i (x - beta_i)^{-b_i} dx
// reduced to F_D(a; b; c; 1 + beta) with c = sum b and a = c - n - 1 via
//   int_0^inf u^n prod (u - beta_i)^{-b_i} du = Gamma(a) n! / Gamma(c) F_D(a; b; c; 1 + beta).
// That identity covers only x > 0. Completion::full_line adds the mirrored
// half, (-1)^n T evaluated at -beta, which the literal reading omits.

#include <array>
#include <string_view>

#include "qstates/complex.hpp"

namespace qstates::closed {

enum class Radicand {
  difference, // alpha^2 - |alpha|^2 - 2/(q-1): the roots of the bracket
  sum,        // |alpha|^2 + alpha^2 - 2/(q-1): the alternative printing
};

enum class Completion { half_line, full_line };

struct Convention {
  Radicand radicand = Radicand::difference;
  Completion completion = Completion::full_line;

  bool operator==(const Convention&) const = default;
};

inline constexpr Convention kPrinted{Radicand::difference, Completion::half_line};

std::string_view to_string(Convention c);

/// beta_1..beta_4 under the given radicand choice.
std::array<cplx, 4> roots(double q, cplx alpha, Radicand r);

struct Calibration {
  double q = 1.2;
  double alpha = 0.3;
  Convention convention;
  // Relative deviation of the closed-form A from the oracle for each
  // candidate, indexed [radicand][completion].
  std::array<std::array<double, 2>, 2> deviations{};
};

/// The convention whose A(q, alpha) is closest to the oracle at the anchor
/// (q, alpha) = (1.2, 0.3). Computed once and cached.
const Calibration& anchor_calibration();

inline Convention calibrated() { return anchor_calibration().convention; }

/// Worst relative error reported by the F_D evaluations of the last call
/// made on this thread.
double last_fd_error() noexcept;

/// integral |bracket|^2 dx.
cplx norm_integral(double q, cplx alpha, Convention c);

/// A = norm_integral^{-1/2}.
cplx norm_constant(double q, cplx alpha, Convention c);

/// The overlap formula as written: A(alpha) A(beta) times the F_D built
/// from beta_3, beta_4 of alpha and beta_1, beta_2 of beta. This is
/// integral psi_alpha conj(psi_beta).
cplx overlap(double q, cplx alpha, cplx beta, Convention c);

// Moments for a state normalized by the constant A.
cplx mean_x(double q, cplx alpha, cplx A, Convention c);
cplx mean_x2(double q, cplx alpha, cplx A, Convention c);
cplx mean_p(double q, cplx alpha, cplx A, Convention c);
cplx mean_p2(double q, cplx alpha, cplx A, Convention c);

} // namespace qstates::closed
