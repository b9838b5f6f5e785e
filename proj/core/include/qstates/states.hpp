#pragma once

// Ordinary coherent states and Tsallis pseudo-coherent states
//   psi_{alpha q}(x) = A(q, alpha) [1 + (q-1)/2 (x^2 - 2 sqrt2 alpha x + |alpha|^2 + alpha^2)]^{1/(1-q)}
// in units with m omega / hbar = 1. A multiplies the bracket; q = 1 selects
// the ordinary coherent state.

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qstates/complex.hpp"
#include "qstates/quadrature.hpp"

namespace qstates {

enum class Method { closed_form, oracle };

std::string_view to_string(Method m) noexcept;

/// Closed form vs oracle disagreement above this (relative) is a
/// ConventionMismatch in the strict APIs.
inline constexpr double kConventionTolerance = 1e-5;

// ----------------------------------------------------- validity windows

// |psi|^2 ~ |x|^{4/(1-q)} in the tails; power counting gives the q range in
// which each quantity exists.
enum class Quantity {
  norm,            // q < 5
  mean_x,          // q < 3
  second_moments,  // q < 7/3, the full moment suite
  momentum_closed, // 1 < q < 3, |k| exponent (3-q)/(q-1) positive
};

double validity_limit(Quantity w) noexcept;

/// Throws Errc::out_of_validity_window unless q lies in the window. q = 1 is
/// accepted as the coherent-state sentinel except for momentum_closed.
void require_window(Quantity w, double q);

// ------------------------------------------------------------ functions

/// e_q(z) = [1 + (1-q) z]^{1/(1-q)}, exactly e^z at q = 1.
/// Errc::pole_hit when the base vanishes and the exponent is negative.
cplx q_exponential(double q, cplx z);

/// pi^{-1/4} e^{-alpha^2/2} e^{-|alpha|^2/2} e^{-x^2/2} e^{sqrt2 alpha x}
cplx coherent_psi(cplx alpha, double x);

/// a_n = alpha^n e^{-|alpha|^2/2} / sqrt(n!) for n = 0..n_max.
std::vector<cplx> coherent_coefficients(cplx alpha, int n_max);

struct BetaRoots {
  cplx beta1, beta2, beta3, beta4;

  std::array<cplx, 4> as_array() const { return {beta1, beta2, beta3, beta4}; }
};

/// beta_{1,2} = sqrt2 conj(alpha) +- sqrt(conj(alpha)^2 - |alpha|^2 - 2/(q-1)),
/// beta_{3,4} = sqrt2 alpha +- sqrt(alpha^2 - |alpha|^2 - 2/(q-1)).
/// beta_3, beta_4 are the roots of the bracket of psi; beta_1, beta_2 those
/// of its conjugate.
BetaRoots beta_roots(double q, cplx alpha);

struct WaveFunctionSample {
  double x = 0.0;
  cplx value{};
  cplx d1{};
  cplx d2{};
};

/// The raw bracket power (A = 1) and its first two x-derivatives. At q = 1
/// the bracket power becomes exp(-Q/2) with Q the same quadratic.
/// Errc::pole_hit if the bracket vanishes.
WaveFunctionSample psi_unnormalized(double q, cplx alpha, double x);

/// Width parameter handed to the whole-line quadrature for this state.
double state_scale(cplx alpha) noexcept;

/// (integral of |psi|^2)^{-1/2} for an arbitrary wavefunction.
double oracle_normalization(const std::function<cplx(double)>& psi, double tol,
                            double scale = 1.0);

/// Value from the requested method together with the oracle reference.
struct CheckedValue {
  cplx value{};
  cplx oracle{};
  double deviation = 0.0;
};

/// A(q, alpha). The oracle is the positive real quadrature constant; the
/// closed form goes through F_D with the anchor-calibrated convention and
/// throws Errc::convention_mismatch if it strays from the oracle.
cplx normalization_constant(double q, cplx alpha, Method method, double tol = 1e-10);

/// Closed form and oracle side by side, without the mismatch check.
CheckedValue normalization_constant_checked(double q, cplx alpha, double tol = 1e-10);

class StateLabel {
public:
  /// Computes the oracle normalization eagerly.
  StateLabel(double q, cplx alpha, double tol = 1e-10);

  double q() const noexcept { return q_; }
  cplx alpha() const noexcept { return alpha_; }
  double norm_constant() const noexcept { return norm_; }

  /// Normalized psi at x.
  cplx operator()(double x) const;

private:
  double q_;
  cplx alpha_;
  double norm_;
};

/// <a|b> = integral conj(psi_a) psi_b. Same-q states only.
cplx overlap(const StateLabel& a, const StateLabel& b, Method method, double tol = 1e-10);

/// Closed form overlap (as it is written: the conjugate sits on the second
/// label) next to the oracle <a|b>.
CheckedValue overlap_checked(const StateLabel& a, const StateLabel& b, double tol = 1e-10);

/// a_q f = (x/sqrt2) f + f^{1-q} f' / sqrt2 with a principal-branch power.
/// Errc::zero_amplitude when f(x) = 0 and q != 1.
cplx apply_aq(double q, const std::function<WaveFunctionSample(double)>& f, double x);

} // namespace qstates
