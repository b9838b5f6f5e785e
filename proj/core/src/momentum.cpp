#include "qstates/momentum.hpp"

#include <cmath>
#include <sstream>

#include "qstates/closed_form.hpp"
#include "qstates/errors.hpp"
#include "qstates/quadrature.hpp"
#include "qstates/specfun.hpp"

namespace qstates {
namespace {

cplx fourier(double q, cplx alpha, double A, double k, double tol) {
  IntegrandSpec spec{[q, alpha](double x) { return psi_unnormalized(q, alpha, x).value; }, Domain::whole_line, {},
                     state_scale(alpha)};
  return A * fourier_transform_line(spec, k, tol).value;
}

cplx gaussian_amplitude(cplx alpha, double k) {
  return std::pow(pi, -0.25) *
         std::exp(-0.5 * (k * k + 2.0 * sqrt2 * cplx(0.0, 1.0) * alpha * k - alpha * alpha + std::norm(alpha)));
}

struct KummerPieces {
  double s;
  cplx A;
  cplx root_w;
};

KummerPieces kummer_pieces(double q, cplx alpha, double k) {
  require_window(Quantity::momentum_closed, q);
  if (k == 0.0) throw Error(Errc::invalid_argument, "the Kummer form of the amplitude needs k != 0");
  const double s = 1.0 / (q - 1.0);
  const cplx w = alpha * alpha - std::norm(alpha) - 2.0 * s;
  return {s, closed::norm_constant(q, alpha, closed::calibrated()), principal_sqrt(w)};
}

} // namespace

cplx momentum_amplitude_oracle(double q, cplx alpha, double k, double tol) {
  require_window(Quantity::norm, q);
  const double A = normalization_constant(q, alpha, Method::oracle, tol).real();
  return fourier(q, alpha, A, k, tol);
}

cplx momentum_amplitude_closed(double q, cplx alpha, double k) {
  if (q == 1.0) return gaussian_amplitude(alpha, k);
  const auto [s, A, rw] = kummer_pieces(q, alpha, k);
  const double sg = sign(k);
  const double ak = std::abs(k);
  const cplx lead = sg * std::sqrt(2.0 * pi) * A *
                    std::exp((2.0 * s - 1.0) * std::log(ak) - log_gamma(2.0 * s) - cplx(0.0, pi * sg * s));
  return lead * std::exp(cplx(0.0, 1.0) * (sqrt2 * alpha + rw)) * kummer_phi(s, 2.0 * s, cplx(0.0, -2.0) * rw * ak);
}

cplx momentum_pd_closed(double q, cplx alpha, double k) {
  if (q == 1.0) return std::norm(gaussian_amplitude(alpha, k));
  const auto [s, A, rw] = kummer_pieces(q, alpha, k);
  const cplx ac = std::conj(alpha);
  const cplx rwc = principal_sqrt(ac * ac - std::norm(alpha) - 2.0 * s);
  const double ak = std::abs(k);
  const cplx lead = 2.0 * pi * A * A * std::exp(2.0 * (2.0 * s - 1.0) * std::log(ak) - 2.0 * log_gamma(2.0 * s));
  const cplx phase = std::exp(cplx(0.0, 1.0) * (sqrt2 * (alpha - ac) + rw - rwc));
  return lead * phase * kummer_phi(s, 2.0 * s, cplx(0.0, -2.0) * rw * ak) *
         kummer_phi(s, 2.0 * s, cplx(0.0, 2.0) * rwc * ak);
}

CheckedValue momentum_amplitude_checked(double q, cplx alpha, double k, double tol) {
  CheckedValue v;
  v.value = momentum_amplitude_closed(q, alpha, k);
  v.oracle = momentum_amplitude_oracle(q, alpha, k, tol);
  v.deviation = relative_deviation(v.value, v.oracle);
  return v;
}

cplx momentum_amplitude(double q, cplx alpha, double k, Method method, double tol) {
  if (method == Method::oracle) return momentum_amplitude_oracle(q, alpha, k, tol);
  const CheckedValue v = momentum_amplitude_checked(q, alpha, k, tol);
  if (v.deviation > kConventionTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "momentum amplitude at q = " << q << ", alpha = " << alpha << ", k = " << k << ": closed " << v.value
       << " vs oracle " << v.oracle << " (relative deviation " << v.deviation << ")";
    throw Error(Errc::convention_mismatch, os.str());
  }
  return v.value;
}

std::vector<double> default_k_grid(cplx alpha, int points) {
  if (points < 2) throw Error(Errc::invalid_argument, "a k grid needs at least two points");
  const double K = 8.0 + 2.0 * std::abs(alpha);
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = -K + 2.0 * K * i / (points - 1);
  return g;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(Errc::invalid_argument, "trapezoid needs matching x and y");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

MomentumPd momentum_pd(double q, cplx alpha, const std::vector<double>& k_grid, Method method, double tol) {
  MomentumPd out;
  out.samples.reserve(k_grid.size());
  if (method == Method::oracle) {
    require_window(Quantity::norm, q);
    const double A = normalization_constant(q, alpha, Method::oracle, tol).real();
    std::vector<double> pd;
    pd.reserve(k_grid.size());
    for (double k : k_grid) {
      const cplx amp = fourier(q, alpha, A, k, tol);
      out.samples.push_back({k, amp, std::norm(amp), method});
      pd.push_back(std::norm(amp));
    }
    out.parseval = trapezoid(k_grid, pd);
  } else {
    for (double k : k_grid) {
      // The Kummer form carries Sgn(k) |k|^{(3-q)/(q-1)} and is zero at k = 0.
      const cplx amp = (k == 0.0 && q != 1.0) ? cplx(0.0) : momentum_amplitude_closed(q, alpha, k);
      out.samples.push_back({k, amp, std::norm(amp), method});
    }
  }
  return out;
}

} // namespace qstates
