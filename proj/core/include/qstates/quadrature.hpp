#pragma once

// Adaptive Gauss-Kronrod (10/21) quadrature used as the independent oracle
// for every closed form in the library.

#include <functional>
#include <utility>
#include <vector>

#include "qstates/complex.hpp"

namespace qstates {

struct QuadratureResult {
  cplx value{};
  double err_estimate = 0.0;
  long evaluations = 0;
};

enum class Domain { interval, whole_line };

struct IntegrandSpec {
  std::function<cplx(double)> evaluator;
  Domain domain = Domain::interval;
  // Points where the integrand is singular (or not smooth). Segments
  // touching a hint are graded quadratically toward it.
  std::vector<double> hints;
  // Characteristic width of the integrand; sets the core/tail split on the
  // whole line.
  double scale = 1.0;
};

struct QuadratureOptions {
  long max_evaluations = 1'000'000;
  // Convergence target is tol * max(abs_floor, |value|).
  double abs_floor = 1.0;
};

/// Adaptive subdivision on [a, b]. Throws Errc::not_converged when the
/// evaluation budget runs out before err_estimate <= tol * max(floor, |value|).
QuadratureResult integrate_interval(const IntegrandSpec& f, double a, double b, double tol,
                                    const QuadratureOptions& opts = {});

struct LineResult : QuadratureResult {
  // Fitted power-law exponent p of |f(x)| ~ |x|^-p in the far tails; +inf
  // when the samples underflow (faster than any power).
  double decay_exponent = 0.0;
  // Exponent m of the tail map x = L v^-m actually used.
  int tail_grading = 1;
};

/// Integral over the real line. The core [-L, L] is integrated directly and
/// each tail through x = +-L v^-m with m picked from the sampled decay rate.
/// Throws Errc::slow_decay when the sampled tails look non-integrable.
LineResult integrate_line(const IntegrandSpec& f, double tol, const QuadratureOptions& opts = {});

/// (2 pi)^-1/2 * integral of e^{-ikx} f(x) over the real line. The core is
/// split into half-period panels; tails are summed cycle by cycle and
/// accelerated with Wynn's epsilon algorithm.
QuadratureResult fourier_transform_line(const IntegrandSpec& f, double k, double tol,
                                        const QuadratureOptions& opts = {});

/// Sampled tail decay exponent (see LineResult::decay_exponent).
double estimate_decay_exponent(const IntegrandSpec& f, double core_half_width);

/// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
/// best estimate of the limit and an error estimate.
std::pair<cplx, double> wynn_epsilon(const std::vector<cplx>& partial_sums);

} // namespace qstates
