#pragma once

#include <cstddef>
#include <functional>

#include "pqmkz/pq_core.hpp"

namespace pqmkz {

struct IntegralResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // bound on the discarded remainder at the stop
};

/// Jackson integral over [0,1]:
///
///   int_0^1 f dt = (p - q) sum_{j>=0} (q^j / p^{j+1}) f(q^j / p^{j+1})
///
/// Node j sits at t_j = (q/p)^j / p, so for p < 1 the first node is 1/p > 1
/// and f must be evaluable on [0, 1/p].  The weight remaining after index j
/// is exactly (q/p)^{j+1}; the stop rule bounds the discarded tail by
/// (weight tail) * (max |f| over the last three nodes) * 2 and halts once
/// that drops below tol.  Throws truncation_error at the term cap.
IntegralResult jackson_integral(const std::function<double(double)>& f,
                                const PQParams& pq, double tol,
                                std::size_t max_terms = 10000);

/// Beta function for integer arguments t, s >= 1, closed form:
///
///   p^{((s+t-1)(s+t-2) - (t-1)(t-2))/2 - t + 1} [t-1]! [s-1]! / [s+t-1]!
///
/// evaluated in log space so large arguments neither under- nor overflow.
double pq_beta_closed(int t, int s, const PQParams& pq);

/// The defining integral of the beta function,
///   int_0^1 x^{t-1} (1 - qx)^{s-1} d_{p,q} x,
/// computed by jackson_integral.  Serves as the independent cross-check of
/// pq_beta_closed; the two agree to quadrature tolerance.
IntegralResult pq_beta_integral(int t, int s, const PQParams& pq, double tol,
                                std::size_t max_terms = 10000);

}  // namespace pqmkz
