#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "beta_integral.hpp"
#include "qstates/errors.hpp"
#include "qstates/specfun.hpp"

namespace qstates {

namespace detail {

Scaled operator*(const Scaled& l, const Scaled& r) { return {l.mantissa * r.mantissa, l.log_scale + r.log_scale}; }

Scaled operator*(cplx l, const Scaled& r) { return {l * r.mantissa, r.log_scale}; }

Scaled operator+(const Scaled& l, const Scaled& r) {
  if (l.mantissa == cplx(0.0, 0.0)) return r;
  if (r.mantissa == cplx(0.0, 0.0)) return l;
  const double s = std::max(l.log_scale, r.log_scale);
  return {l.mantissa * std::exp(l.log_scale - s) + r.mantissa * std::exp(r.log_scale - s), s};
}

Scaled scaled_from_log(cplx log_value) { return {std::polar(1.0, log_value.imag()), log_value.real()}; }

} // namespace detail

namespace {

void check_denominator(const LauricellaArgs& args) {
  if (is_nonpositive_integer(args.c))
    throw Error(Errc::parameter_pole, "Lauricella F_D: c is zero or a negative integer");
}

double max_abs_x(const LauricellaArgs& args) {
  double m = 0.0;
  for (const auto& x : args.x) m = std::max(m, std::abs(x));
  return m;
}

} // namespace

LauricellaResult lauricella_fd_series(const LauricellaArgs& args, double tol, const FdSeriesOptions& opts) {
  check_denominator(args);
  if (max_abs_x(args) >= 1.0)
    throw Error(Errc::divergent_series, "Lauricella F_D series needs max|x_i| < 1");

  const int n_max = opts.max_total_degree;
  std::array<std::vector<cplx>, 4> e;
  for (auto& v : e) v.reserve(n_max + 1);
  std::vector<cplx> c12, c123;
  c12.reserve(n_max + 1);
  c123.reserve(n_max + 1);

  cplx ratio = 1.0; // (a)_n / (c)_n
  cplx sum = 0.0;
  int quiet = 0;
  std::vector<double> recent;
  for (int n = 0; n <= n_max; ++n) {
    for (int i = 0; i < 4; ++i)
      e[i].push_back(n == 0 ? cplx(1.0) : e[i][n - 1] * (args.b[i] + (n - 1.0)) * args.x[i] / static_cast<double>(n));
    cplx s12 = 0.0, s123 = 0.0, shell = 0.0;
    for (int j = 0; j <= n; ++j) s12 += e[0][j] * e[1][n - j];
    c12.push_back(s12);
    for (int j = 0; j <= n; ++j) s123 += c12[j] * e[2][n - j];
    c123.push_back(s123);
    for (int j = 0; j <= n; ++j) shell += c123[j] * e[3][n - j];

    if (n > 0) ratio *= (args.a + (n - 1.0)) / (args.c + (n - 1.0));
    const cplx term = ratio * shell;
    sum += term;
    recent.push_back(std::abs(term));

    if (std::abs(term) <= tol * std::abs(sum)) {
      if (++quiet >= opts.quiet_shells) {
        LauricellaResult out;
        out.value = sum;
        double tail = 0.0;
        for (int k = 0; k < opts.quiet_shells; ++k) tail += recent[recent.size() - 1 - k];
        out.err_estimate = tail;
        out.evaluations = n + 1;
        out.strategy = FdStrategy::series;
        return out;
      }
    } else {
      quiet = 0;
    }
  }
  std::ostringstream os;
  os << "Lauricella F_D series: total degree cap " << n_max << " reached (partial sum " << sum << ")";
  throw Error(Errc::not_converged, os.str());
}

namespace detail {

Scaled lauricella_fd_integral_scaled(const LauricellaArgs& args, double tol, double* err) {
  check_denominator(args);
  if (!(args.a.real() > 0.0) || !((args.c - args.a).real() > 0.0))
    throw Error(Errc::invalid_argument, "Lauricella F_D integral needs Re a > 0 and Re(c-a) > 0");
  for (int i = 0; i < 4; ++i) {
    if (args.b[i] == cplx(0.0, 0.0)) continue;
    if (args.x[i].imag() == 0.0 && args.x[i].real() > 1.0) {
      std::ostringstream os;
      os << "1 - u*x_" << i + 1 << " crosses the negative real axis at u = " << 1.0 / args.x[i].real();
      throw Error(Errc::branch_crossing, os.str());
    }
  }
  const auto log_g = [&args](double u) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i)
      if (args.b[i] != cplx(0.0, 0.0)) s -= args.b[i] * principal_log(1.0 - u * args.x[i]);
    return s;
  };
  const BetaIntegral bi = beta_weighted_integral(log_g, args.a, args.c - args.a, tol);
  if (err) *err = bi.rel_err;
  const cplx log_pref = log_gamma(args.c) - log_gamma(args.a) - log_gamma(args.c - args.a);
  return scaled_from_log(log_pref) * bi.value;
}

} // namespace detail

LauricellaResult lauricella_fd_integral(const LauricellaArgs& args, double tol) {
  double rel_err = 0.0;
  const detail::Scaled s = detail::lauricella_fd_integral_scaled(args, tol, &rel_err);
  LauricellaResult out;
  out.value = s.value();
  out.err_estimate = rel_err * std::abs(out.value);
  out.evaluations = 1;
  out.strategy = FdStrategy::integral;
  return out;
}

LauricellaResult lauricella_fd(const LauricellaArgs& args, double tol) {
  const bool integral_ok = args.a.real() > 0.0 && (args.c - args.a).real() > 0.0;
  if (max_abs_x(args) < 1.0) {
    try {
      return lauricella_fd_series(args, tol);
    } catch (const Error& e) {
      if (e.code() != Errc::not_converged || !integral_ok) throw;
    }
  }
  return lauricella_fd_integral(args, tol);
}

} // namespace qstates
