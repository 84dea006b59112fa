#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pqmkz/pq_core.hpp"

namespace pqmkz {

/// Series-truncation policy shared by the basis, the operator, and the
/// convergence helpers.
struct OperatorConfig {
  /// Mass-based stop: truncate once sum of basis weights >= 1 - tail_tol.
  double tail_tol = 1e-12;
  /// Hard cap on series terms; exceeding it raises truncation_error.
  std::size_t max_terms = 10000;
  /// If set, sum exactly k = 0..*fixed_terms (inclusive) with no mass
  /// requirement.  Used by the figure pipeline, which fixes K = 150.
  std::optional<std::size_t> fixed_terms;
  /// Base absolute tolerance for numeric kernel integrals; scaled by
  /// (pq)^k per term so the summed quadrature error stays below it.
  double integral_tol = 1e-12;
  /// Evaluation at x = 1: the basis series degenerates there, so by default
  /// the operator returns f(1).  Setting this returns the constant 1
  /// instead, matching the convention that defines the operator as 1 at the
  /// right endpoint regardless of f.
  bool literal_endpoint = false;

  void validate() const;
};

/// Basis weights m_{n,0..K}(x) for one x, plus their accumulated mass.
/// The full weight family sums to 1 (partition of unity), so 1 - mass is
/// the truncation deficit.
struct WeightSlice {
  std::vector<double> weights;
  double mass = 0.0;
  std::size_t max_index() const { return weights.size() - 1; }
};

/// Single basis weight
///   m_{n,k}(x) = [n+k choose k] x^k (1-x)^{n+1}_{p,q} / p^{kn + n(n+1)/2}
/// computed by the ratio recurrence
///   m_{n,k+1} = m_{n,k} * ([n+k+1]/[k+1]) * x * p^{-n}
/// seeded at m_{n,0}(x) = prod_{j=0}^{n} (1 - (q/p)^j x).  Every
/// intermediate value is itself a weight, so nothing under- or overflows
/// where the direct factorial form would.
double mkz_weight(int n, int k, double x, const PQParams& pq);

/// All weights for one x under the truncation policy.  x must lie in
/// [0, 1); at x = 0 the slice is the single weight 1.  Mass-based stop
/// unless cfg.fixed_terms is set.
WeightSlice mkz_weights(int n, double x, const PQParams& pq,
                        const OperatorConfig& cfg = {});

/// Durrmeyer kernel value
///   b_{n,k}(qt) = [n+k+1 choose k] (qt)^k (1-qt)^n_{p,q}
///                 / p^{k(n-1) + n(n-1)/2}
/// evaluated as a fused product of bounded factors.  Nonnegative for
/// qt <= 1 and at every Jackson node up to 1/p.
double kernel_value(int n, int k, double t, const PQParams& pq);

/// Closed form of int_0^1 b_{n,k}(qt) t^s d_{p,q} t:
///
///   [n+k+1]! [k+s]! / ([k]! [n+k+s+1]!) * (pq)^k / [n+1] * p^{n(s+1)}
///
/// evaluated in log space.  Agrees with jackson_integral of
/// kernel_value * t^s to quadrature tolerance.
double kernel_monomial_integral(int n, int k, int s, const PQParams& pq);

/// Left side of the series identity used by the moment bounds:
///   sum_k [n+k choose k] x^k (1-x)^{n+1}_{p,q} p^{(r-n)k} / [n+k]^{(r)}
/// summed under cfg ([m]^{(r)} denotes the falling factorial).
/// Requires n > r >= 1 and x in [0, 1).
double lemma2_lhs(int n, int r, double x, const PQParams& pq,
                  const OperatorConfig& cfg = {});

/// Right side of the same identity:
///   prod_{j=0}^{r-1} (p^{n-j} - q^{n-j} x) / [n]^{(r)}
///   * p^{(n-r)(n-r+1)/2}
double lemma2_rhs(int n, int r, double x, const PQParams& pq);

/// Checks 1/[n+k+r] <= 1/(q^r [n+k]), the denominator comparison used to
/// peel moments apart.  Holds for every n+k >= 1, r >= 0 because
/// [m+r] >= q^r [m] reduces to p^r >= q^r.
bool lemma3_check(int n, int k, int r, const PQParams& pq);

}  // namespace pqmkz
