#include "qstates/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstates/closed_form.hpp"
#include "qstates/errors.hpp"
#include "qstates/limits.hpp"
#include "qstates/quadrature.hpp"

namespace qstates {

double MomentDeviations::max() const { return std::max({mean_x, mean_x2, mean_p, mean_p2}); }

void finish_report(MomentReport& r) {
  const double mx = r.mean_x.real();
  const double mp = r.mean_p.real();
  r.var_x = std::max(0.0, r.mean_x2.real() - mx * mx);
  r.var_p = std::max(0.0, r.mean_p2.real() - mp * mp);
  r.product = std::sqrt(r.var_x) * std::sqrt(r.var_p);
}

namespace {

void check_real(const char* name, cplx v, double q, cplx alpha) {
  if (std::abs(v.imag()) > 1e-6 * (1.0 + std::abs(v.real()))) {
    std::ostringstream os;
    os << name << " at q = " << q << ", alpha = " << alpha << " has imaginary part " << v.imag();
    throw Error(Errc::not_converged, os.str());
  }
}

} // namespace

MomentReport moments_oracle(double q, cplx alpha, double tol) {
  require_window(Quantity::second_moments, q);
  const double scale = state_scale(alpha);
  auto line = [&](auto&& g) {
    IntegrandSpec spec{[&g, q, alpha](double x) { return g(psi_unnormalized(q, alpha, x)); }, Domain::whole_line, {},
                       scale};
    return integrate_line(spec, tol).value;
  };
  const double norm = line([](const WaveFunctionSample& s) { return cplx(std::norm(s.value)); }).real();
  if (!(norm > 0.0)) throw Error(Errc::not_converged, "norm integral is not positive");

  MomentReport r;
  r.q = q;
  r.alpha = alpha;
  r.method = Method::oracle;
  r.mean_x = line([](const WaveFunctionSample& s) { return cplx(s.x * std::norm(s.value)); }) / norm;
  r.mean_x2 = line([](const WaveFunctionSample& s) { return cplx(s.x * s.x * std::norm(s.value)); }) / norm;
  r.mean_p = cplx(0.0, -1.0) * line([](const WaveFunctionSample& s) { return std::conj(s.value) * s.d1; }) / norm;
  r.mean_p2 = line([](const WaveFunctionSample& s) { return cplx(std::norm(s.d1)); }) / norm;
  const cplx p2_alt = -line([](const WaveFunctionSample& s) { return std::conj(s.value) * s.d2; }) / norm;
  r.p2_crosscheck = relative_deviation(p2_alt, r.mean_p2);

  check_real("<x>", r.mean_x, q, alpha);
  check_real("<x^2>", r.mean_x2, q, alpha);
  check_real("<p>", r.mean_p, q, alpha);
  check_real("<p^2>", r.mean_p2, q, alpha);
  finish_report(r);
  return r;
}

MomentReport moments_closed(double q, cplx alpha, const ClosedMomentOptions& opts) {
  require_window(Quantity::second_moments, q);
  MomentReport r;
  if (q == 1.0) {
    r = coherent_reference_moments(alpha);
  } else {
    const auto conv = closed::calibrated();
    const cplx A = closed::norm_constant(q, alpha, conv);
    r.mean_x = closed::mean_x(q, alpha, A, conv);
    r.mean_x2 = closed::mean_x2(q, alpha, A, conv);
    r.mean_p = closed::mean_p(q, alpha, A, conv);
    r.mean_p2 = closed::mean_p2(q, alpha, A, conv);
    finish_report(r);
  }
  r.q = q;
  r.alpha = alpha;
  r.method = Method::closed_form;

  MomentReport computed;
  const MomentReport* oracle = opts.oracle;
  if (!oracle) {
    computed = moments_oracle(q, alpha, opts.oracle_tol);
    oracle = &computed;
  }
  MomentDeviations d;
  d.mean_x = relative_deviation(r.mean_x, oracle->mean_x);
  d.mean_x2 = relative_deviation(r.mean_x2, oracle->mean_x2);
  d.mean_p = relative_deviation(r.mean_p, oracle->mean_p);
  d.mean_p2 = relative_deviation(r.mean_p2, oracle->mean_p2);
  r.deviations = d;

  if (opts.strict && d.max() > kConventionTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "moments at q = " << q << ", alpha = " << alpha << " deviate from the oracle: <x> " << d.mean_x
       << ", <x^2> " << d.mean_x2 << ", <p> " << d.mean_p << ", <p^2> " << d.mean_p2;
    throw Error(Errc::convention_mismatch, os.str());
  }
  return r;
}

double uncertainty_product(double q, cplx alpha, Method method, double tol) {
  if (method == Method::oracle) return moments_oracle(q, alpha, tol).product;
  ClosedMomentOptions opts;
  opts.oracle_tol = tol;
  return moments_closed(q, alpha, opts).product;
}

} // namespace qstates
