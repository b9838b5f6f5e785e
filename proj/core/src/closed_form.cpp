#include "qstates/closed_form.hpp"

#include <algorithm>
#include <limits>

#include "qstates/errors.hpp"
#include "qstates/specfun.hpp"
#include "qstates/states.hpp"

namespace qstates::closed {
namespace {

using detail::Scaled;

constexpr double kFdTol = 1e-12;

thread_local double fd_error = 0.0;

void require_q(double q) {
  if (!(q > 1.0)) throw Error(Errc::invalid_argument, "closed forms need q > 1 (q = 1 has its own formulas)");
}

Scaled fd_scaled(const LauricellaArgs& args) {
  double max_x = 0.0;
  for (const auto& x : args.x) max_x = std::max(max_x, std::abs(x));
  if (max_x < 1.0) {
    try {
      const auto r = lauricella_fd_series(args, kFdTol);
      fd_error = std::max(fd_error, r.err_estimate / std::max(std::abs(r.value), 1e-300));
      return {r.value, 0.0};
    } catch (const Error& e) {
      if (e.code() != Errc::not_converged) throw;
    }
  }
  double err = 0.0;
  const Scaled s = detail::lauricella_fd_integral_scaled(args, kFdTol, &err);
  fd_error = std::max(fd_error, err);
  return s;
}

// T(n; b) over the half or whole line.
Scaled term(int n, const std::array<cplx, 4>& b, const std::array<cplx, 4>& beta, Completion completion) {
  const cplx c = b[0] + b[1] + b[2] + b[3];
  const cplx a = c - static_cast<double>(n + 1);
  const Scaled pref = detail::scaled_from_log(log_gamma(a) + log_gamma(n + 1.0) - log_gamma(c));
  auto half = [&](double sgn) {
    LauricellaArgs args{a, b, c, {}};
    for (int i = 0; i < 4; ++i) args.x[i] = 1.0 + sgn * beta[i];
    return pref * fd_scaled(args);
  };
  Scaled out = half(1.0);
  if (completion == Completion::full_line) out = out + cplx(n % 2 == 0 ? 1.0 : -1.0) * half(-1.0);
  return out;
}

double s_of(double q) { return 1.0 / (q - 1.0); }

// ((q-1)/2)^{-2s}
Scaled bracket_prefactor(double q) { return detail::scaled_from_log(-2.0 * s_of(q) * std::log(0.5 * (q - 1.0))); }

std::array<cplx, 4> uniform_b(double s, double extra) { return {s, s, s + extra, s + extra}; }

} // namespace

std::string_view to_string(Convention c) {
  if (c.radicand == Radicand::difference)
    return c.completion == Completion::full_line ? "difference radicand, full line" : "difference radicand, half line";
  return c.completion == Completion::full_line ? "sum radicand, full line" : "sum radicand, half line";
}

std::array<cplx, 4> roots(double q, cplx alpha, Radicand r) {
  require_q(q);
  const double c = 2.0 / (q - 1.0);
  const cplx ac = std::conj(alpha);
  const double n2 = std::norm(alpha);
  const double sign_abs = r == Radicand::difference ? -1.0 : 1.0;
  const cplx w12 = principal_sqrt(ac * ac + sign_abs * n2 - c);
  const cplx w34 = principal_sqrt(alpha * alpha + sign_abs * n2 - c);
  return {fold_negative_zero(sqrt2 * ac + w12), fold_negative_zero(sqrt2 * ac - w12),
          fold_negative_zero(sqrt2 * alpha + w34), fold_negative_zero(sqrt2 * alpha - w34)};
}

double last_fd_error() noexcept { return fd_error; }

cplx norm_integral(double q, cplx alpha, Convention conv) {
  require_q(q);
  require_window(Quantity::norm, q);
  fd_error = 0.0;
  const double s = s_of(q);
  return (bracket_prefactor(q) * term(0, uniform_b(s, 0.0), roots(q, alpha, conv.radicand), conv.completion)).value();
}

cplx norm_constant(double q, cplx alpha, Convention conv) {
  const cplx n = norm_integral(q, alpha, conv);
  const double err = fd_error;
  const cplx A = 1.0 / std::sqrt(n);
  fd_error = err;
  return A;
}

cplx overlap(double q, cplx alpha, cplx beta, Convention conv) {
  const cplx Aa = norm_constant(q, alpha, conv);
  double err = fd_error;
  const cplx Ab = norm_constant(q, beta, conv);
  err = std::max(err, fd_error);
  const auto ra = roots(q, alpha, conv.radicand);
  const auto rb = roots(q, beta, conv.radicand);
  const double s = s_of(q);
  fd_error = 0.0;
  const Scaled t = term(0, uniform_b(s, 0.0), {ra[2], ra[3], rb[0], rb[1]}, conv.completion);
  fd_error = std::max(err, fd_error);
  return Aa * Ab * (bracket_prefactor(q) * t).value();
}

cplx mean_x(double q, cplx alpha, cplx A, Convention conv) {
  require_q(q);
  require_window(Quantity::mean_x, q);
  fd_error = 0.0;
  const double s = s_of(q);
  return A * A * (bracket_prefactor(q) * term(1, uniform_b(s, 0.0), roots(q, alpha, conv.radicand), conv.completion)).value();
}

cplx mean_x2(double q, cplx alpha, cplx A, Convention conv) {
  require_q(q);
  require_window(Quantity::second_moments, q);
  fd_error = 0.0;
  const double s = s_of(q);
  return A * A * (bracket_prefactor(q) * term(2, uniform_b(s, 0.0), roots(q, alpha, conv.radicand), conv.completion)).value();
}

cplx mean_p(double q, cplx alpha, cplx A, Convention conv) {
  require_q(q);
  require_window(Quantity::second_moments, q);
  fd_error = 0.0;
  const double s = s_of(q);
  const auto beta = roots(q, alpha, conv.radicand);
  const auto b = uniform_b(s, 1.0);
  const Scaled bracket = cplx(2.0) * term(1, b, beta, conv.completion) +
                         (-2.0 * sqrt2 * alpha) * term(0, b, beta, conv.completion);
  const cplx pref = cplx(0.0, -1.0) * A * A / (1.0 - q);
  return pref * (bracket_prefactor(q) * bracket).value();
}

cplx mean_p2(double q, cplx alpha, cplx A, Convention conv) {
  require_q(q);
  require_window(Quantity::second_moments, q);
  fd_error = 0.0;
  const double s = s_of(q);
  const auto beta = roots(q, alpha, conv.radicand);
  const auto b1 = uniform_b(s, 1.0);
  const auto b2 = uniform_b(s, 2.0);
  const Scaled inner = cplx(4.0) * term(2, b2, beta, conv.completion) +
                       (-8.0 * sqrt2 * alpha) * term(1, b2, beta, conv.completion) +
                       (8.0 * alpha * alpha) * term(0, b2, beta, conv.completion);
  const Scaled outer = cplx(2.0) * term(0, b1, beta, conv.completion) + cplx(q / (1.0 - q)) * inner;
  return -A * A / (1.0 - q) * (bracket_prefactor(q) * outer).value();
}

const Calibration& anchor_calibration() {
  static const Calibration cal = [] {
    Calibration c;
    const cplx A_oracle = normalization_constant(c.q, c.alpha, Method::oracle, 1e-12);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 2; ++r) {
      for (int h = 0; h < 2; ++h) {
        const Convention conv{r == 0 ? Radicand::difference : Radicand::sum,
                              h == 0 ? Completion::half_line : Completion::full_line};
        double dev = std::numeric_limits<double>::infinity();
        try {
          dev = relative_deviation(norm_constant(c.q, c.alpha, conv), A_oracle);
        } catch (const Error&) {
        }
        if (!std::isfinite(dev)) dev = std::numeric_limits<double>::infinity();
        c.deviations[r][h] = dev;
        if (dev < best) {
          best = dev;
          c.convention = conv;
        }
      }
    }
    return c;
  }();
  return cal;
}

} // namespace qstates::closed
