#pragma once

// Scalar special functions: Hermite polynomials and functions, Gamma and
// Pochhammer symbols, Kummer's confluent hypergeometric function and the
// four-variable Lauricella F_D.

#include <array>
#include <vector>

#include "qstates/complex.hpp"
#include "qstates/quadrature.hpp"

namespace qstates {

// ---------------------------------------------------------------- Hermite

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite_poly(int n, double x);

/// Normalized Hermite function (pi^1/2 2^n n!)^-1/2 e^{-x^2/2} H_n(x).
/// Evaluated by the recurrence on the normalized functions themselves with a
/// running exponent, so neither n! nor e^{-x^2/2} is ever formed for large n.
double hermite_function(int n, double x);

/// All hermite_function(k, x) for k = 0..n_max.
std::vector<double> hermite_functions(int n_max, double x);

// ------------------------------------------------------- Gamma & friends

/// log Gamma(z) via the Lanczos approximation (g = 7, 9 terms), reflected
/// for Re z < 1/2. Only exp() of the result is branch-independent.
cplx log_gamma(cplx z);

/// Gamma(z); throws Errc::parameter_pole at z = 0, -1, -2, ...
cplx gamma(cplx z);

/// Gamma(num) / Gamma(den) computed in log space.
cplx gamma_ratio(cplx num, cplx den);

/// (a)_m = a (a+1) ... (a+m-1), (a)_0 = 1.
cplx pochhammer(cplx a, int m);

/// True for 0, -1, -2, ... (within 1e-12).
bool is_nonpositive_integer(cplx z);

// ---------------------------------------------------------------- Kummer

enum class KummerStrategy { series, integral, asymptotic };

struct KummerResult {
  cplx value;
  KummerStrategy strategy;
};

/// Series is used for |z| <= kKummerSeriesRadius. Beyond that the Euler
/// integral is used when Re b > Re a > 0, otherwise the large-|z| asymptotic
/// expansion. The series is also abandoned in favour of a fallback when its
/// terms exceed the sum by more than 1e8 (cancellation).
inline constexpr double kKummerSeriesRadius = 30.0;

KummerResult kummer_phi_detailed(cplx a, cplx b, cplx z);

/// Confluent hypergeometric function 1F1(a; b; z). Errc::parameter_pole
/// when b is a non-positive integer.
cplx kummer_phi(cplx a, cplx b, cplx z);

// ------------------------------------------------------------ Lauricella

struct LauricellaArgs {
  cplx a{};
  std::array<cplx, 4> b{};
  cplx c{};
  std::array<cplx, 4> x{};
};

enum class FdStrategy { series, integral };

struct LauricellaResult : QuadratureResult {
  FdStrategy strategy = FdStrategy::series;
};

struct FdSeriesOptions {
  int quiet_shells = 3;
  int max_total_degree = 400;
};

/// Quadruple series summed shell by shell in total degree
/// n = m1 + m2 + m3 + m4. Each shell is the degree-n coefficient of
/// prod_i (1 - x_i t)^{-b_i}, obtained by running convolutions, so a shell
/// costs O(n). Stops after `quiet_shells` consecutive shells with relative
/// contribution below tol.
/// Errors: divergent_series when max|x_i| >= 1, not_converged when the
/// degree cap is hit, parameter_pole when c is a non-positive integer.
LauricellaResult lauricella_fd_series(const LauricellaArgs& args, double tol,
                                      const FdSeriesOptions& opts = {});

/// Euler integral Gamma(c)/(Gamma(a)Gamma(c-a)) int_0^1 u^{a-1}(1-u)^{c-a-1}
/// prod (1-u x_i)^{-b_i} du with principal-branch powers. Endpoint
/// singularities (Re a < 1 or Re(c-a) < 1) are removed by u = w^{1/Re a}
/// (resp. 1-u = w^{1/Re(c-a)}).
/// Errors: invalid_argument unless Re a > 0 and Re(c-a) > 0;
/// branch_crossing when some 1 - u x_i reaches the negative real axis.
LauricellaResult lauricella_fd_integral(const LauricellaArgs& args, double tol);

/// Series inside the open unit polydisc, integral representation
/// otherwise (or when the series stalls and the integral is admissible).
LauricellaResult lauricella_fd(const LauricellaArgs& args, double tol);

namespace detail {

/// Value represented as mantissa * exp(log_scale); F_D integrals for q near
/// one under- and overflow doubles long before the final ratio does.
struct Scaled {
  cplx mantissa{};
  double log_scale = 0.0;

  cplx value() const { return mantissa * std::exp(log_scale); }
};

Scaled operator*(const Scaled& l, const Scaled& r);
Scaled operator+(const Scaled& l, const Scaled& r);
Scaled operator*(cplx l, const Scaled& r);
Scaled scaled_from_log(cplx log_value);

/// Scaled form of lauricella_fd_integral, including the Gamma prefactor.
Scaled lauricella_fd_integral_scaled(const LauricellaArgs& args, double tol, double* err = nullptr);

} // namespace detail

} // namespace qstates
