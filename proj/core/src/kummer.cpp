#include <cmath>
#include <limits>

#include "beta_integral.hpp"
#include "qstates/errors.hpp"
#include "qstates/specfun.hpp"

namespace qstates {
namespace {

struct SeriesSum {
  cplx value;
  double cancellation; // max |term| / |sum|
  bool converged;
};

SeriesSum kummer_series(cplx a, cplx b, cplx z) {
  cplx term = 1.0;
  cplx sum = 1.0;
  double max_term = 1.0;
  int quiet = 0;
  for (int m = 0; m < 20000; ++m) {
    term *= (a + static_cast<double>(m)) * z / ((b + static_cast<double>(m)) * (m + 1.0));
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (term == cplx(0.0, 0.0)) return {sum, max_term / std::abs(sum), true};
    if (std::abs(term) <= 1e-17 * std::abs(sum) && m > std::abs(z)) {
      if (++quiet >= 2) return {sum, max_term / std::abs(sum), true};
    } else {
      quiet = 0;
    }
  }
  return {sum, max_term / std::abs(sum), false};
}

// DLMF 13.7.2. Returns false when the truncated expansion is not accurate
// to ~1e-12.
bool kummer_asymptotic(cplx a, cplx b, cplx z, cplx& out) {
  auto sum_series = [](cplx p1, cplx p2, cplx w, double& last) {
    cplx term = 1.0;
    cplx sum = 1.0;
    last = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 200; ++s) {
      const cplx next = term * (p1 + static_cast<double>(s)) * (p2 + static_cast<double>(s)) / ((s + 1.0) * w);
      const double mag = std::abs(next);
      if (mag > prev) break; // expansion starts to diverge
      term = next;
      sum += term;
      prev = mag;
      last = mag / std::abs(sum);
      if (mag <= 1e-16 * std::abs(sum)) break;
    }
    return sum;
  };

  const cplx lg_b = log_gamma(b);
  cplx result = 0.0;
  double worst = 0.0;
  if (!is_nonpositive_integer(a)) {
    double last;
    const cplx s1 = sum_series(1.0 - a, b - a, z, last);
    worst = std::max(worst, last);
    result += std::exp(lg_b - log_gamma(a) + z + (a - b) * principal_log(z)) * s1;
  }
  if (!is_nonpositive_integer(b - a)) {
    double last;
    const cplx s2 = sum_series(a, a - b + 1.0, -z, last);
    worst = std::max(worst, last);
    const double phase = std::arg(fold_negative_zero(z)) > -pi / 2 ? 1.0 : -1.0;
    result += std::exp(lg_b - log_gamma(b - a) + cplx(0.0, phase * pi) * a - a * principal_log(z)) * s2;
  }
  out = result;
  return worst <= 1e-12;
}

cplx kummer_integral(cplx a, cplx b, cplx z) {
  const auto bi = detail::beta_weighted_integral([z](double t) { return z * t; }, a, b - a, 1e-13);
  const cplx log_pref = log_gamma(b) - log_gamma(a) - log_gamma(b - a);
  return bi.value.mantissa * std::exp(log_pref + bi.value.log_scale);
}

} // namespace

KummerResult kummer_phi_detailed(cplx a, cplx b, cplx z) {
  if (is_nonpositive_integer(b))
    throw Error(Errc::parameter_pole, "Kummer phi: b is zero or a negative integer");
  if (z == cplx(0.0, 0.0)) return {1.0, KummerStrategy::series};

  const bool integral_ok = b.real() > a.real() && a.real() > 0.0;
  if (std::abs(z) <= kKummerSeriesRadius) {
    const SeriesSum s = kummer_series(a, b, z);
    if (s.converged && (s.cancellation <= 1e8 || !integral_ok)) return {s.value, KummerStrategy::series};
  }
  if (integral_ok) return {kummer_integral(a, b, z), KummerStrategy::integral};
  cplx asym;
  if (kummer_asymptotic(a, b, z, asym)) return {asym, KummerStrategy::asymptotic};
  const SeriesSum s = kummer_series(a, b, z);
  if (s.converged) return {s.value, KummerStrategy::series};
  throw Error(Errc::not_converged, "Kummer phi: no strategy converged");
}

cplx kummer_phi(cplx a, cplx b, cplx z) { return kummer_phi_detailed(a, b, z).value; }

} // namespace qstates
