#include "beta_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qstates/errors.hpp"

namespace qstates::detail {
namespace {

struct Mapping {
  // Integration variable w on [lo, hi]; returns (u, log u, log(1-u), log du/dw).
  std::function<void(double, double&, double&, double&, double&)> map;
  double lo, hi;
};

} // namespace

BetaIntegral beta_weighted_integral(const std::function<cplx(double)>& log_g, cplx p, cplx r,
                                    double tol) {
  const double rho = p.real();
  const double sigma = r.real();
  if (!(rho > 0.0) || !(sigma > 0.0))
    throw Error(Errc::invalid_argument, "Euler integral needs Re a > 0 and Re(c-a) > 0");

  std::vector<Mapping> maps;
  if (rho < 1.0) {
    maps.push_back({[rho](double w, double& u, double& lu, double& l1u, double& ljac) {
                      lu = std::log(w) / rho;
                      u = std::exp(lu);
                      l1u = std::log1p(-u);
                      ljac = -std::log(rho) + (1.0 - rho) * lu;
                    },
                    0.0, std::pow(0.5, rho)});
  } else {
    maps.push_back({[](double w, double& u, double& lu, double& l1u, double& ljac) {
                      u = w;
                      lu = std::log(u);
                      l1u = std::log1p(-u);
                      ljac = 0.0;
                    },
                    0.0, 0.5});
  }
  if (sigma < 1.0) {
    maps.push_back({[sigma](double w, double& u, double& lu, double& l1u, double& ljac) {
                      l1u = std::log(w) / sigma;
                      const double v = std::exp(l1u);
                      u = 1.0 - v;
                      lu = std::log1p(-v);
                      ljac = -std::log(sigma) + (1.0 - sigma) * l1u;
                    },
                    0.0, std::pow(0.5, sigma)});
  } else {
    maps.push_back({[](double w, double& u, double& lu, double& l1u, double& ljac) {
                      u = 1.0 - w;
                      lu = std::log1p(-w);
                      l1u = std::log(w);
                      ljac = 0.0;
                    },
                    0.0, 0.5});
  }

  auto log_integrand = [&](const Mapping& m, double w) -> cplx {
    double u, lu, l1u, ljac;
    m.map(w, u, lu, l1u, ljac);
    return (p - 1.0) * lu + (r - 1.0) * l1u + ljac + log_g(u);
  };

  // Peak of the real part over a sample grid sets the scale.
  double log_scale = -std::numeric_limits<double>::infinity();
  for (const auto& m : maps) {
    constexpr int kSamples = 96;
    for (int i = 1; i < kSamples; ++i) {
      const double t = static_cast<double>(i) / kSamples;
      const double w = m.lo + (m.hi - m.lo) * t * t * (3.0 - 2.0 * t);
      const double lr = log_integrand(m, w).real();
      if (std::isfinite(lr)) log_scale = std::max(log_scale, lr);
    }
  }
  if (!std::isfinite(log_scale)) throw Error(Errc::not_converged, "Euler integrand vanishes on all samples");

  BetaIntegral out;
  cplx total = 0.0;
  double err = 0.0;
  QuadratureOptions opts;
  opts.abs_floor = 1e-8;
  for (const auto& m : maps) {
    IntegrandSpec spec;
    spec.evaluator = [&, log_scale](double w) -> cplx {
      if (w <= 0.0) return 0.0;
      const cplx l = log_integrand(m, w) - log_scale;
      if (l.real() < -745.0) return 0.0;
      return std::exp(l);
    };
    const QuadratureResult q = integrate_interval(spec, m.lo, m.hi, tol, opts);
    total += q.value;
    err += q.err_estimate;
    out.evaluations += q.evaluations;
  }
  out.value = Scaled{total, log_scale};
  out.rel_err = err / std::max(std::abs(total), std::numeric_limits<double>::min());
  return out;
}

} // namespace qstates::detail
