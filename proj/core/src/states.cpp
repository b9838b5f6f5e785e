#include "qstates/states.hpp"

#include <cmath>
#include <sstream>

#include "qstates/closed_form.hpp"
#include "qstates/errors.hpp"

namespace qstates {

std::string_view to_string(Method m) noexcept {
  return m == Method::closed_form ? "closed-form" : "oracle";
}

double validity_limit(Quantity w) noexcept {
  switch (w) {
  case Quantity::norm: return 5.0;
  case Quantity::mean_x: return 3.0;
  case Quantity::second_moments: return 7.0 / 3.0;
  case Quantity::momentum_closed: return 3.0;
  }
  return 0.0;
}

void require_window(Quantity w, double q) {
  const bool sentinel_ok = w != Quantity::momentum_closed;
  const bool ok = (q == 1.0 && sentinel_ok) || (q > 1.0 && q < validity_limit(w));
  if (!ok) {
    std::ostringstream os;
    os << "q = " << q << " outside " << (sentinel_ok ? "[1, " : "(1, ") << validity_limit(w) << ")";
    throw Error(Errc::out_of_validity_window, os.str());
  }
}

cplx q_exponential(double q, cplx z) {
  if (q == 1.0) return std::exp(z);
  const cplx base = 1.0 + (1.0 - q) * z;
  const double e = 1.0 / (1.0 - q);
  if (base == cplx(0.0, 0.0)) {
    if (e < 0.0) throw Error(Errc::pole_hit, "q-exponential base vanishes with a negative exponent");
    return 0.0;
  }
  return principal_pow(base, e);
}

cplx coherent_psi(cplx alpha, double x) {
  const double norm2 = std::norm(alpha);
  return std::pow(pi, -0.25) * std::exp(-0.5 * alpha * alpha - 0.5 * norm2 - 0.5 * x * x + sqrt2 * alpha * x);
}

std::vector<cplx> coherent_coefficients(cplx alpha, int n_max) {
  if (n_max < 0) throw Error(Errc::invalid_argument, "n_max must be non-negative");
  std::vector<cplx> a(n_max + 1);
  a[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) a[n] = a[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return a;
}

BetaRoots beta_roots(double q, cplx alpha) {
  const auto r = closed::roots(q, alpha, closed::Radicand::difference);
  return {r[0], r[1], r[2], r[3]};
}

WaveFunctionSample psi_unnormalized(double q, cplx alpha, double x) {
  require_window(Quantity::norm, q);
  const cplx u = x - sqrt2 * alpha;
  const cplx Q = x * x - 2.0 * sqrt2 * alpha * x + std::norm(alpha) + alpha * alpha;
  WaveFunctionSample out;
  out.x = x;
  if (q == 1.0) {
    out.value = std::exp(-0.5 * Q);
    out.d1 = -u * out.value;
    out.d2 = (u * u - 1.0) * out.value;
    return out;
  }
  const cplx B = 1.0 + 0.5 * (q - 1.0) * Q;
  if (B == cplx(0.0, 0.0)) throw Error(Errc::pole_hit, "bracket of psi vanishes");
  out.value = principal_pow(B, 1.0 / (1.0 - q));
  out.d1 = -u * out.value / B;
  out.d2 = -out.value / B + q * u * u * out.value / (B * B);
  return out;
}

double state_scale(cplx alpha) noexcept { return 1.0 + sqrt2 * std::abs(alpha.real()); }

double oracle_normalization(const std::function<cplx(double)>& psi, double tol, double scale) {
  IntegrandSpec spec{[&psi](double x) { return cplx(std::norm(psi(x)), 0.0); }, Domain::whole_line, {}, scale};
  const double n = integrate_line(spec, tol).value.real();
  if (!(n > 0.0)) throw Error(Errc::not_converged, "norm integral is not positive");
  return 1.0 / std::sqrt(n);
}

namespace {

double oracle_constant(double q, cplx alpha, double tol) {
  require_window(Quantity::norm, q);
  return oracle_normalization([q, alpha](double x) { return psi_unnormalized(q, alpha, x).value; }, tol,
                              state_scale(alpha));
}

cplx closed_constant(double q, cplx alpha) {
  require_window(Quantity::norm, q);
  if (q == 1.0) return std::pow(pi, -0.25);
  return closed::norm_constant(q, alpha, closed::calibrated());
}

void throw_mismatch(const char* what, double q, cplx alpha, const CheckedValue& v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at q = " << q << ", alpha = " << alpha << ": closed " << v.value << " vs oracle " << v.oracle
     << " (relative deviation " << v.deviation << ")";
  throw Error(Errc::convention_mismatch, os.str());
}

} // namespace

CheckedValue normalization_constant_checked(double q, cplx alpha, double tol) {
  CheckedValue v;
  v.oracle = oracle_constant(q, alpha, tol);
  v.value = closed_constant(q, alpha);
  v.deviation = relative_deviation(v.value, v.oracle);
  return v;
}

cplx normalization_constant(double q, cplx alpha, Method method, double tol) {
  if (method == Method::oracle) return oracle_constant(q, alpha, tol);
  const CheckedValue v = normalization_constant_checked(q, alpha, tol);
  if (v.deviation > kConventionTolerance) throw_mismatch("A(q, alpha)", q, alpha, v);
  return v.value;
}

StateLabel::StateLabel(double q, cplx alpha, double tol) : q_(q), alpha_(alpha), norm_(oracle_constant(q, alpha, tol)) {}

cplx StateLabel::operator()(double x) const { return norm_ * psi_unnormalized(q_, alpha_, x).value; }

namespace {

cplx oracle_overlap(const StateLabel& a, const StateLabel& b, double tol) {
  IntegrandSpec spec{[&a, &b](double x) { return std::conj(a(x)) * b(x); }, Domain::whole_line, {},
                     std::max(state_scale(a.alpha()), state_scale(b.alpha()))};
  return integrate_line(spec, tol).value;
}

cplx closed_overlap(const StateLabel& a, const StateLabel& b) {
  if (a.q() == 1.0) {
    // Coherent-state value with the same slot convention as the q formula.
    return std::exp(-0.5 * std::norm(a.alpha()) - 0.5 * std::norm(b.alpha()) + a.alpha() * std::conj(b.alpha()));
  }
  return closed::overlap(a.q(), a.alpha(), b.alpha(), closed::calibrated());
}

void require_same_q(const StateLabel& a, const StateLabel& b) {
  if (a.q() != b.q()) throw Error(Errc::invalid_argument, "overlaps are defined between states of equal q");
}

} // namespace

CheckedValue overlap_checked(const StateLabel& a, const StateLabel& b, double tol) {
  require_same_q(a, b);
  CheckedValue v;
  v.oracle = oracle_overlap(a, b, tol);
  v.value = closed_overlap(a, b);
  v.deviation = relative_deviation(v.value, v.oracle);
  return v;
}

cplx overlap(const StateLabel& a, const StateLabel& b, Method method, double tol) {
  require_same_q(a, b);
  if (method == Method::oracle) return oracle_overlap(a, b, tol);
  const CheckedValue v = overlap_checked(a, b, tol);
  if (v.deviation > kConventionTolerance) throw_mismatch("overlap", a.q(), a.alpha(), v);
  return v.value;
}

cplx apply_aq(double q, const std::function<WaveFunctionSample(double)>& f, double x) {
  const WaveFunctionSample s = f(x);
  if (q == 1.0) return (x * s.value + s.d1) / sqrt2;
  if (s.value == cplx(0.0, 0.0)) throw Error(Errc::zero_amplitude, "a_q needs f(x) != 0 when q != 1");
  return (x * s.value + principal_pow(s.value, 1.0 - q) * s.d1) / sqrt2;
}

} // namespace qstates
