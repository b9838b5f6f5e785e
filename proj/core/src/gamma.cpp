#include <cmath>
#include <sstream>

#include "qstates/errors.hpp"
#include "qstates/specfun.hpp"

namespace qstates {
namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

} // namespace

bool is_nonpositive_integer(cplx z) {
  if (std::abs(z.imag()) > 1e-12 || z.real() > 0.5) return false;
  return std::abs(z.real() - std::round(z.real())) < 1e-12;
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream os;
    os << "Gamma has a pole at " << z.real();
    throw Error(Errc::parameter_pole, os.str());
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  const cplx zm = z - 1.0;
  cplx sum = kLanczos[0];
  for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (zm + static_cast<double>(i));
  const cplx t = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (zm + 0.5) * std::log(t) - t + std::log(sum);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx gamma_ratio(cplx num, cplx den) { return std::exp(log_gamma(num) - log_gamma(den)); }

cplx pochhammer(cplx a, int m) {
  if (m < 0) throw Error(Errc::invalid_argument, "pochhammer requires m >= 0");
  cplx p = 1.0;
  for (int k = 0; k < m; ++k) p *= a + static_cast<double>(k);
  return p;
}

} // namespace qstates
