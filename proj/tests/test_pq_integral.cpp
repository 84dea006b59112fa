#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pqmkz/pq_integral.hpp"

using namespace pqmkz;

static const PQParams kParams[] = {PQParams(1.0, 0.9), PQParams(0.95, 0.9),
                                   PQParams(0.9, 0.8), PQParams(0.9, 0.5)};

TEST_CASE("constant integrates to one") {
  for (const auto& pq : kParams) {
    const auto r = jackson_integral([](double) { return 1.0; }, pq, 1e-12);
    CHECK(std::abs(r.value - 1.0) <= 2e-12);
    CHECK(r.tail_bound <= 1e-12);
    CHECK(r.terms_used >= 4);
  }
}

TEST_CASE("monomial law: integral of t^s is 1/[s+1]") {
  for (const auto& pq : kParams) {
    for (int s = 0; s <= 6; ++s) {
      const auto r = jackson_integral(
          [s](double t) { return std::pow(t, s); }, pq, 1e-13);
      CHECK(r.value ==
            doctest::Approx(1.0 / pq_integer(s + 1, pq)).epsilon(1e-10));
    }
  }
}

TEST_CASE("first node sits at 1/p, so integrands see arguments above 1") {
  const PQParams pq(0.9, 0.8);
  double max_t = 0.0;
  jackson_integral(
      [&](double t) {
        max_t = std::max(max_t, t);
        return 1.0;
      },
      pq, 1e-10);
  CHECK(max_t == doctest::Approx(1.0 / 0.9).epsilon(1e-14));
}

TEST_CASE("linearity and positivity") {
  const PQParams pq(0.95, 0.9);
  auto f = [](double t) { return t * t; };
  auto g = [](double t) { return 1.0 - 0.5 * t; };
  const double combined = jackson_integral(
      [&](double t) { return 2.0 * f(t) + 3.0 * g(t); }, pq, 1e-14).value;
  const double parts = 2.0 * jackson_integral(f, pq, 1e-14).value +
                       3.0 * jackson_integral(g, pq, 1e-14).value;
  CHECK(combined == doctest::Approx(parts).epsilon(1e-12));

  CHECK(jackson_integral(f, pq, 1e-12).value >= 0.0);
}

TEST_CASE("term cap raises truncation_error") {
  const PQParams pq(1.0, 0.9);
  CHECK_THROWS_AS(
      jackson_integral([](double) { return 1.0; }, pq, 1e-15, 10),
      truncation_error);
}

TEST_CASE("beta closed form, frozen small cases") {
  const PQParams pq(0.9, 0.8);
  // (1,1): empty products, integral of 1
  CHECK(pq_beta_closed(1, 1, pq) == doctest::Approx(1.0).epsilon(1e-14));
  // (2,1): integral of x, equals 1/[2] = 1/(p+q)
  CHECK(pq_beta_closed(2, 1, pq) ==
        doctest::Approx(1.0 / 1.7).epsilon(1e-13));
  // (1,2): integral of (1 - qx), equals p/(p+q)
  CHECK(pq_beta_closed(1, 2, pq) ==
        doctest::Approx(0.9 / 1.7).epsilon(1e-13));
  // (2,2): p^2 [1]! [1]! / [3]! = 0.81 / 3.689
  CHECK(pq_beta_closed(2, 2, pq) ==
        doctest::Approx(0.81 / 3.689).epsilon(1e-12));
  CHECK_THROWS_AS(pq_beta_closed(0, 1, pq), std::domain_error);
  CHECK_THROWS_AS(pq_beta_integral(1, 0, pq, 1e-10), std::domain_error);
}

TEST_CASE("beta closed form against its defining integral") {
  for (const auto& pq : kParams) {
    for (int t = 1; t <= 5; ++t) {
      for (int s = 1; s <= 5; ++s) {
        const double closed = pq_beta_closed(t, s, pq);
        const auto num = pq_beta_integral(t, s, pq, 1e-12 * closed);
        CHECK(num.value == doctest::Approx(closed).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("beta scales like 1/[s+t-1] along the diagonal t = 1") {
  // closed form at t = 1: p^{s(s-1)/2} / [s]
  const PQParams pq(0.95, 0.9);
  for (int s = 1; s <= 10; ++s) {
    const double expect =
        std::pow(0.95, s * (s - 1) / 2) / pq_integer(s, pq);
    CHECK(pq_beta_closed(1, s, pq) == doctest::Approx(expect).epsilon(1e-12));
  }
}
