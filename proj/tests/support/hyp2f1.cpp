#include "hyp2f1.hpp"

#include <stdexcept>

namespace qstates::testing {
namespace {

cplx series(cplx a, cplx b, cplx c, cplx x) {
  cplx term = 1.0, sum = 1.0;
  for (int n = 0; n < 5000; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * (n + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 5) return sum;
  }
  throw std::runtime_error("hyp2f1 series did not converge");
}

} // namespace

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
  if (std::abs(x) <= 0.5) return series(a, b, c, x);
  const cplx y = x / (x - 1.0);
  if (std::abs(y) < 0.9) return std::pow(1.0 - x, -a) * series(a, c - b, c, y);
  return series(a, b, c, x);
}

} // namespace qstates::testing
