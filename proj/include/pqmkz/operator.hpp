#pragma once

#include "pqmkz/function.hpp"
#include "pqmkz/mkz.hpp"
#include "pqmkz/pq_core.hpp"

namespace pqmkz {

struct EvalResult {
  double value = 0.0;
  /// Largest basis index k included in the sum.
  std::size_t k_used = 0;
  /// Bound on the discarded series tail: (1 - mass) * sup |f| over the
  /// reachable node set; at most tail_tol * sup |f| on a mass-based stop.
  double tail_bound = 0.0;
  /// Base tolerance the numeric kernel integrals were run at (0 when the
  /// polynomial fast path was taken).
  double integral_tol = 0.0;
};

struct BoundsReport {
  double x = 0.0;
  double actual = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool holds = false;
};

/// The Durrmeyer-type operator
///
///   M(f; x) = ([n+1]/p^n) sum_k m_{n,k}(x) (pq)^{-k}
///             int_0^1 b_{n,k}(qt) f(t) d_{p,q} t,   0 <= x < 1,
///
/// with M(f; 1) = f(1) (or the constant 1 under cfg.literal_endpoint).
/// Polynomial f is routed through the closed-form kernel integrals; other
/// f falls back to per-term Jackson quadrature with tolerances scaled by
/// (pq)^k so the summed quadrature error stays below cfg.integral_tol.
EvalResult apply(const Function1D& f, int n, double x, const PQParams& pq,
                 const OperatorConfig& cfg = {});

/// M(e_s; x) for the monomial e_s(t) = t^s.  Equivalent to the closed-form
/// composition but with the per-term factor reduced to
/// p^{ns} prod_{i=1}^{s} [k+i]/[n+k+1+i], which is O(s) per term.
EvalResult apply_monomial(int s, int n, double x, const PQParams& pq,
                          const OperatorConfig& cfg = {});

/// Central moment M((t - x)^i; x), expanded through the raw moments so no
/// cancellation-prone quadrature is involved for i <= 2.
double central_moment(int i, int n, double x, const PQParams& pq,
                      const OperatorConfig& cfg = {});

/// Two-sided envelope for the raw moments, i in {0, 1, 2}:
///   i = 0:  M(e_0; x) = 1 exactly;
///   i = 1:  x/q^2 (1 - (q+1)/[n]) <= M(e_1; x)
///              <= x/q + (p^n - q^n x)/(q^2 [n]);
///   i = 2:  M(e_2; x) <= x^2/q^2
///              + (p+q)^2/q^5 * (p^n - q^n x) x / [n]
///              + p(p+q)/q^6 * (p^n - q^n x)(p^{n-1} - q^{n-1} x)/([n][n-1])
/// (lower bound -inf where none is asserted; i = 2 needs n >= 2).
/// holds allows slack 1e-9 * (1 + |upper|) for rounding.
BoundsReport theorem1_bounds(int i, int n, double x, const PQParams& pq,
                             const OperatorConfig& cfg = {});

/// Upper envelope for the central moments psi_i = M((t-x)^i; x), i in {1,2}:
///   psi_1 <= (p^n - q^n x)/(q^2 [n]) + (1/q - 1) x
///   psi_2 <= x^2 (1 - 1/q^2 + 2(q+1)/(q^2 [n])) + the two i = 2 terms above
/// with the same slack convention as theorem1_bounds.
BoundsReport corollary1_bounds(int i, int n, double x, const PQParams& pq,
                               const OperatorConfig& cfg = {});

}  // namespace pqmkz
