#include <cmath>

#include "doctest.h"
#include "qstates/errors.hpp"
#include "qstates/limits.hpp"
#include "qstates/quadrature.hpp"
#include "qstates/states.hpp"

using namespace qstates;

TEST_CASE("coherent reference moments") {
  const auto z = coherent_reference_moments(0.0);
  CHECK(z.mean_x == cplx(0.0));
  CHECK(z.mean_x2 == cplx(0.5));
  CHECK(z.mean_p == cplx(0.0));
  CHECK(z.mean_p2 == cplx(0.5));
  CHECK(z.product == 0.5);

  const auto one = coherent_reference_moments(1.0);
  CHECK(std::abs(one.mean_x - sqrt2) < 1e-15);
  CHECK(std::abs(one.mean_p) < 1e-15);

  const auto i = coherent_reference_moments(cplx(0.0, 1.0));
  CHECK(std::abs(i.mean_x) < 1e-15);
  CHECK(std::abs(i.mean_p - sqrt2) < 1e-15);
  CHECK(std::abs(i.mean_p2 - 2.5) < 1e-15);
}

TEST_CASE("coherent reference moments match quadrature") {
  for (cplx a : {cplx(0.0), cplx(1.0), cplx(0.0, 1.0), cplx(0.7, 0.3)}) {
    auto moment = [a](auto&& g) {
      IntegrandSpec s{[a, &g](double x) {
                        const cplx v = coherent_psi(a, x);
                        const cplx u = x - sqrt2 * a;
                        return g(x, v, -u * v, (u * u - 1.0) * v);
                      },
                      Domain::whole_line, {}, 2.0};
      return integrate_line(s, 1e-12).value;
    };
    const auto ref = coherent_reference_moments(a);
    INFO("alpha=" << a);
    CHECK(std::abs(moment([](double x, cplx v, cplx, cplx) { return x * std::norm(v); }) - ref.mean_x) < 1e-8);
    CHECK(std::abs(moment([](double x, cplx v, cplx, cplx) { return x * x * std::norm(v); }) - ref.mean_x2) < 1e-8);
    CHECK(std::abs(moment([](double, cplx v, cplx d1, cplx) { return cplx(0, -1) * std::conj(v) * d1; }) -
                   ref.mean_p) < 1e-8);
    CHECK(std::abs(moment([](double, cplx v, cplx, cplx d2) { return -std::conj(v) * d2; }) - ref.mean_p2) < 1e-8);
  }
}

TEST_CASE("coherent momentum distribution") {
  const cplx a = cplx(1.0, 1.0) / sqrt2 * 0.5;
  const double p0 = sqrt2 * a.imag();
  CHECK(coherent_pd(a, p0) == doctest::Approx(1.0 / std::sqrt(pi)));
  CHECK(coherent_pd(a, p0 + 1.0) == doctest::Approx(std::exp(-1.0) / std::sqrt(pi)));
}

TEST_CASE("second-order expansion of the state") {
  const cplx a(0.4, 0.1);
  const QExpansionState e(1.0, a);
  const cplx ratio = e(0.0) / coherent_psi(a, 0.0);
  for (double x : {-1.5, 0.3, 2.0}) CHECK(std::abs(e(x) / coherent_psi(a, x) - ratio) < 1e-10);

  CHECK_THROWS_AS(QExpansionState(1.2, a), Error);
  CHECK_NOTHROW(QExpansionState(1.2, a, 0.25));

  // L2 distance to the exact normalized state shrinks like (q - 1)^2.
  std::vector<double> c;
  for (double q : {1.1, 1.05, 1.02}) {
    const QExpansionState approx(q, 0.4);
    const StateLabel exact(q, 0.4);
    IntegrandSpec d{[&](double x) { return cplx(std::norm(approx(x) - exact(x))); }, Domain::whole_line, {},
                    state_scale(0.4)};
    const double dist = std::sqrt(integrate_line(d, 1e-12).value.real());
    c.push_back(dist / ((q - 1.0) * (q - 1.0)));
  }
  for (double v : c) CHECK(v == doctest::Approx(c.back()).epsilon(0.5));
}

TEST_CASE("judge") {
  CHECK(judge({0.3, 0.1, 0.005}, 1e-2, 1e-9) == Verdict::converged);
  CHECK(judge({0.3, 0.1, 0.02}, 1e-2, 1e-9) == Verdict::not_converged);
  CHECK(judge({0.1, 0.2, 0.005}, 1e-2, 1e-9) == Verdict::not_converged);
  CHECK(judge({1e-12, 1e-13, 1e-12}, 1e-2, 1e-9) == Verdict::converged);
  CHECK(judge({}, 1e-2, 1e-9) == Verdict::not_converged);
  CHECK(to_string(Verdict::converged) == "converged");
}

TEST_CASE("limit convergence") {
  const std::vector<double> seq{1.2, 1.1, 1.05, 1.02};
  SUBCASE("headline run") {
    const auto r = limit_convergence_check(0.5, seq);
    for (const auto* t : r.tracks()) {
      INFO(t->name);
      CHECK(t->verdict == Verdict::converged);
      CHECK(t->ratio_bounded);
    }
    CHECK(r.all_converged());
    CHECK(r.product.gaps.back() >= 0.0);
  }

  SUBCASE("parity zeros") {
    const auto r = limit_convergence_check(0.0, seq);
    for (double g : r.mean_x.gaps) CHECK(g < 1e-12);
    for (double g : r.mean_p.gaps) CHECK(g < 1e-12);
    for (double g : r.product.gaps) CHECK(g >= 0.0);
  }

  SUBCASE("bad sequences") {
    CHECK_THROWS_AS(limit_convergence_check(0.5, {}), Error);
    CHECK_THROWS_AS(limit_convergence_check(0.5, {1.1, 1.2}), Error);
    CHECK_THROWS_AS(limit_convergence_check(0.5, {1.0}), Error);
    CHECK_THROWS_AS(limit_convergence_check(0.5, {2.5}), Error);
  }
}
