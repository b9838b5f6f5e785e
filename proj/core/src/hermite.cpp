#include <cmath>

#include "qstates/errors.hpp"
#include "qstates/specfun.hpp"

namespace qstates {
namespace {

void check_order(int n) {
  if (n < 0) throw Error(Errc::invalid_argument, "Hermite order must be non-negative");
}

} // namespace

double hermite_poly(int n, double x) {
  check_order(n);
  if (n == 0) return 1.0;
  double hm1 = 1.0;
  double h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double hp1 = 2.0 * x * h - 2.0 * k * hm1;
    hm1 = h;
    h = hp1;
  }
  return h;
}

std::vector<double> hermite_functions(int n_max, double x) {
  check_order(n_max);
  // Recurrence on h~_n = h_n * pi^{1/4} e^{x^2/2} / exp(log_scale), rescaled
  // whenever it grows large; the Gaussian and the scale are applied per entry.
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  const double base = -0.25 * std::log(pi) - 0.5 * x * x;

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> logs(out.size());
  double log_scale = 0.0;
  double hm1 = 0.0;
  double h = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    out[n] = h;
    logs[n] = log_scale;
    const double hp1 = std::sqrt(2.0 / (n + 1)) * x * h - std::sqrt(static_cast<double>(n) / (n + 1)) * hm1;
    hm1 = h;
    h = hp1;
    if (std::abs(h) > kBig) {
      h /= kBig;
      hm1 /= kBig;
      log_scale += log_big;
    }
  }
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (out[n] == 0.0) continue;
    out[n] = std::copysign(std::exp(std::log(std::abs(out[n])) + logs[n] + base), out[n]);
  }
  return out;
}

double hermite_function(int n, double x) {
  check_order(n);
  return hermite_functions(n, x).back();
}

} // namespace qstates
