#include <cmath>

#include "doctest.h"
#include "qstates/closed_form.hpp"
#include "qstates/errors.hpp"
#include "qstates/quadrature.hpp"
#include "qstates/specfun.hpp"
#include "qstates/states.hpp"

using namespace qstates;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qstates::Error");
  return Errc::invalid_argument;
}

double norm_of(const std::function<cplx(double)>& psi, double scale) {
  IntegrandSpec s{[&psi](double x) { return cplx(std::norm(psi(x))); }, Domain::whole_line, {}, scale};
  return integrate_line(s, 1e-12).value.real();
}

const cplx kAlphas[] = {0.0, 0.5, cplx(0.5, 0.2)};

} // namespace

TEST_CASE("q exponential") {
  CHECK(q_exponential(1.7, 0.0) == cplx(1.0));
  CHECK(std::abs(q_exponential(1.0, 1.0) - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(q_exponential(1.5, 1.0) - 4.0) < 1e-14);
  // Expansion identity: [1 + i(q-1)z]^{1/(1-q)} ~ [1 - (q-1)z^2/2] e^{-iz}, error O((q-1)^2).
  const double z = 0.7;
  double prev = 0.0;
  for (double h : {0.04, 0.02, 0.01}) {
    const double q = 1.0 + h;
    const cplx exact = q_exponential(q, cplx(0.0, -z));
    const cplx approx = (1.0 - 0.5 * h * z * z) * std::exp(cplx(0.0, -z));
    const double d = std::abs(exact - approx);
    if (prev > 0.0) CHECK(prev / d == doctest::Approx(4.0).epsilon(0.1));
    prev = d;
  }
}

TEST_CASE("coherent states") {
  CHECK(std::abs(coherent_psi(0.0, 0.0) - std::pow(pi, -0.25)) < 1e-15);
  const cplx a(0.7, 0.3);
  CHECK(norm_of([a](double x) { return coherent_psi(a, x); }, 2.0) == doctest::Approx(1.0).epsilon(1e-10));

  for (double x : {-1.0, 0.0, 2.0}) {
    const double h = 1e-4;
    const cplx d = (coherent_psi(0.5, x + h) - coherent_psi(0.5, x - h)) / (2.0 * h);
    const cplx analytic = -(x - sqrt2 * 0.5) * coherent_psi(0.5, x);
    CHECK(std::abs(d - analytic) < 1e-8);
    CHECK(std::abs((x * coherent_psi(0.5, x) + analytic) / sqrt2 - 0.5 * coherent_psi(0.5, x)) < 1e-10);
  }

  const auto vac = coherent_coefficients(0.0, 5);
  CHECK(vac[0] == cplx(1.0));
  for (int n = 1; n <= 5; ++n) CHECK(vac[n] == cplx(0.0));

  const auto c = coherent_coefficients(a, 60);
  double total = 0.0;
  for (const cplx& v : c) total += std::norm(v);
  CHECK(std::abs(total - 1.0) < 1e-10);

  for (int n = 0; n <= 10; ++n) {
    IntegrandSpec proj{[a, n](double x) { return coherent_psi(a, x) * hermite_function(n, x); }, Domain::whole_line,
                       {}, 2.0};
    CHECK(std::abs(integrate_line(proj, 1e-12).value - c[n]) < 1e-8);
  }
}

TEST_CASE("beta roots") {
  const auto r = beta_roots(1.5, 0.0);
  CHECK(std::abs(r.beta1 - cplx(0.0, 2.0)) < 1e-14);
  CHECK(std::abs(r.beta2 - cplx(0.0, -2.0)) < 1e-14);
  CHECK(std::abs(r.beta3 - cplx(0.0, 2.0)) < 1e-14);
  CHECK(std::abs(r.beta4 - cplx(0.0, -2.0)) < 1e-14);

  SUBCASE("vieta") {
    const double q = 1.3;
    const cplx alpha(0.4, 0.1);
    const auto b = beta_roots(q, alpha);
    // beta3,4 solve x^2 - 2 sqrt2 alpha x + |alpha|^2 + alpha^2 + 2/(q-1); beta1,2 the conjugate quadratic.
    const cplx c0 = std::norm(alpha) + alpha * alpha + 2.0 / (q - 1.0);
    const cplx c0b = std::conj(c0);
    CHECK(std::abs(b.beta3 + b.beta4 - 2.0 * sqrt2 * alpha) < 1e-12 * std::abs(c0));
    CHECK(std::abs(b.beta3 * b.beta4 - c0) < 1e-12 * std::abs(c0));
    CHECK(std::abs(b.beta1 + b.beta2 - 2.0 * sqrt2 * std::conj(alpha)) < 1e-12 * std::abs(c0));
    CHECK(std::abs(b.beta1 * b.beta2 - c0b) < 1e-12 * std::abs(c0));
  }

  SUBCASE("quartic reconstruction") {
    const double q = 1.6, x = 1.7;
    const cplx alpha = 0.25;
    const auto b = beta_roots(q, alpha).as_array();
    cplx prod = 1.0;
    for (const cplx& v : b) prod *= x - v;
    const cplx Q = x * x - 2.0 * sqrt2 * alpha * x + std::norm(alpha) + alpha * alpha + 2.0 / (q - 1.0);
    const cplx expected = Q * std::conj(Q);
    CHECK(std::abs(prod - expected) < 1e-12 * std::abs(expected));
  }
}

TEST_CASE("unnormalized state") {
  CHECK(std::abs(psi_unnormalized(1.5, 0.0, 0.0).value - 1.0) < 1e-15);

  const cplx a(0.3, 0.2);
  const cplx r0 = psi_unnormalized(1.0, a, 0.0).value / coherent_psi(a, 0.0);
  for (double x : {-2.0, -0.5, 1.0, 3.0})
    CHECK(std::abs(psi_unnormalized(1.0, a, x).value / coherent_psi(a, x) - r0) < 1e-10 * std::abs(r0));

  const double h = 1e-4;
  const auto s = psi_unnormalized(1.4, 0.3, 0.8);
  const cplx fd = (psi_unnormalized(1.4, 0.3, 0.8 + h).value - 2.0 * s.value + psi_unnormalized(1.4, 0.3, 0.8 - h).value) /
                  (h * h);
  CHECK(std::abs(fd - s.d2) / std::abs(s.d2) < 1e-6);
  const cplx fd1 = (psi_unnormalized(1.4, 0.3, 0.8 + h).value - psi_unnormalized(1.4, 0.3, 0.8 - h).value) / (2 * h);
  CHECK(std::abs(fd1 - s.d1) / std::abs(s.d1) < 1e-7);

  CHECK(code_of([] { psi_unnormalized(5.0, 0.1, 0.0); }) == Errc::out_of_validity_window);
  CHECK(code_of([] { psi_unnormalized(0.9, 0.1, 0.0); }) == Errc::out_of_validity_window);
}

TEST_CASE("validity windows") {
  CHECK(validity_limit(Quantity::norm) == 5.0);
  CHECK(validity_limit(Quantity::mean_x) == 3.0);
  CHECK(validity_limit(Quantity::second_moments) == doctest::Approx(7.0 / 3.0));
  CHECK_NOTHROW(require_window(Quantity::second_moments, 1.0));
  CHECK_NOTHROW(require_window(Quantity::second_moments, 2.3));
  CHECK(code_of([] { require_window(Quantity::second_moments, 2.4); }) == Errc::out_of_validity_window);
  CHECK(code_of([] { require_window(Quantity::momentum_closed, 1.0); }) == Errc::out_of_validity_window);
}

TEST_CASE("normalization constant") {
  const cplx A = normalization_constant(1.5, 0.0, Method::oracle);
  CHECK(A.imag() == 0.0);
  CHECK(A.real() > 0.0);
  CHECK(norm_of([A](double x) { return A * psi_unnormalized(1.5, 0.0, x).value; }, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const double doubled =
      oracle_normalization([](double x) { return 2.0 * psi_unnormalized(1.5, 0.0, x).value; }, 1e-10);
  CHECK(doubled == doctest::Approx(0.5 * A.real()).epsilon(1e-10));

  // 1/A -> pi^{1/4} as q -> 1.
  CHECK(std::abs(normalization_constant(1.0, 0.3, Method::closed_form) - std::pow(pi, -0.25)) < 1e-15);
  CHECK(1.0 / normalization_constant(1.001, 0.0, Method::oracle).real() ==
        doctest::Approx(std::pow(pi, 0.25)).epsilon(1e-3));

  SUBCASE("closure on the grid") {
    for (double q : {1.2, 1.4, 1.6, 2.0}) {
      for (cplx a : kAlphas) {
        const StateLabel st(q, a);
        INFO("q=" << q << " alpha=" << a);
        CHECK(norm_of(st, state_scale(a)) == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }

  SUBCASE("closed form after calibration") {
    const auto& cal = closed::anchor_calibration();
    CHECK(cal.q == 1.2);
    CHECK(cal.alpha == 0.3);
    CHECK(cal.deviations[0][1] < kConventionTolerance);
    CHECK(cal.deviations[0][0] > kConventionTolerance);
    for (double q : {1.2, 1.3, 1.6}) {
      for (cplx a : {cplx(0.3), cplx(0.3, 0.1)}) {
        const auto v = normalization_constant_checked(q, a);
        INFO("q=" << q << " alpha=" << a);
        CHECK(v.deviation < kConventionTolerance);
      }
    }
    const cplx printed = closed::norm_constant(1.3, 0.3, closed::kPrinted);
    const double oracle = normalization_constant(1.3, 0.3, Method::oracle).real();
    CHECK(relative_deviation(printed, oracle) > kConventionTolerance);
  }
}

TEST_CASE("overlaps") {
  const StateLabel s(1.4, 0.3);
  CHECK(std::abs(overlap(s, s, Method::oracle) - 1.0) < 1e-9);

  const StateLabel t(1.4, -0.2);
  CHECK(std::abs(overlap(s, t, Method::oracle) - std::conj(overlap(t, s, Method::oracle))) < 1e-12);

  const StateLabel a(1.5, 0.5), b(1.5, -0.5);
  CHECK(std::abs(overlap(a, b, Method::oracle)) < 1.0);

  const StateLabel c(1.5, cplx(0.1, 0.4));
  CHECK(std::abs(overlap(a, c, Method::oracle)) < 1.0 - 1e-3);

  const StateLabel other_q(1.6, 0.3);
  CHECK(code_of([&] { overlap(s, other_q, Method::oracle); }) == Errc::invalid_argument);

  SUBCASE("closed form is the conjugate of the oracle") {
    const auto v = overlap_checked(s, t);
    CHECK(std::abs(v.value - std::conj(v.oracle)) < 1e-8);
    const StateLabel u(1.4, cplx(0.0, 0.3));
    const auto w = overlap_checked(s, u);
    CHECK(w.deviation > kConventionTolerance);
    CHECK(std::abs(w.value - std::conj(w.oracle)) < 1e-8);
    CHECK(code_of([&] { overlap(s, u, Method::closed_form); }) == Errc::convention_mismatch);
  }

  SUBCASE("coherent sentinel") {
    const StateLabel p(1.0, cplx(0.3, 0.1)), r(1.0, cplx(-0.2, 0.4));
    const auto v = overlap_checked(p, r);
    CHECK(std::abs(v.value - std::conj(v.oracle)) < 1e-9);
  }
}

TEST_CASE("parity about the vertex") {
  const StateLabel st(1.6, 0.4);
  const double vertex = sqrt2 * 0.4;
  for (double d : {0.3, 1.1, 4.0}) CHECK(std::abs(st(vertex + d)) == doctest::Approx(std::abs(st(vertex - d))));
}

TEST_CASE("a_q eigenvalue") {
  const cplx a04 = 0.4;
  auto coherent = [a04](double x) {
    const cplx v = coherent_psi(a04, x);
    return WaveFunctionSample{x, v, -(x - sqrt2 * a04) * v, {}};
  };
  for (double x : {-1.0, 0.5, 2.0}) CHECK(std::abs(apply_aq(1.0, coherent, x) - a04 * coherent(x).value) < 1e-10);

  for (double q : {1.3, 1.5, 1.7}) {
    for (cplx a : {cplx(0.3), cplx(0.3, 0.1), cplx(0.0)}) {
      auto phi = [q, a](double x) { return psi_unnormalized(q, a, x); };
      for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const cplx v = phi(x).value;
        INFO("q=" << q << " alpha=" << a << " x=" << x);
        const double bound = a == 0.0 ? 1e-12 * std::abs(v) : 1e-8 * std::abs(a * v);
        CHECK(std::abs(apply_aq(q, phi, x) - a * v) <= bound);
      }
    }
  }

  auto zero = [](double x) { return WaveFunctionSample{x, 0.0, 1.0, 0.0}; };
  CHECK(code_of([&] { apply_aq(1.5, zero, 0.0); }) == Errc::zero_amplitude);
}
