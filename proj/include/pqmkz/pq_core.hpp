#pragma once

#include <stdexcept>

namespace pqmkz {

/// Thrown when a series fails to reach its tolerance within the term cap.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter pair for the two-parameter quantum calculus, 0 < q < p <= 1.
/// Immutable once constructed; construction validates the window.
class PQParams {
 public:
  PQParams(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  /// q/p, the geometric decay rate of the node and weight sequences.
  double ratio() const noexcept { return q_ / p_; }

 private:
  double p_;
  double q_;
};

/// [n] = (p^n - q^n)/(p - q).  [0] = 0, [1] = 1.
///
/// Not monotone in n for p < 1: the sequence rises while
/// q^n(1-q) > p^n(1-p) and decays to 0 afterwards.  Only for p = 1
/// (the one-parameter case) is it strictly increasing.
double pq_integer(int n, const PQParams& pq);

/// log [n], n >= 1.  Stable for large n where p^n - q^n underflows.
double pq_log_integer(int n, const PQParams& pq);

/// [n]! = [1][2]...[n], [0]! = 1.  Underflows for large n with p < 1;
/// use pq_log_factorial past roughly n = 60.
double pq_factorial(int n, const PQParams& pq);

/// log [n]!
double pq_log_factorial(int n, const PQParams& pq);

/// [n choose k] = [n]!/([k]! [n-k]!), computed as a product of ratios
/// so intermediate factorials never underflow.  Domain error if k > n.
double pq_binomial(int n, int k, const PQParams& pq);

/// log [n choose k]
double pq_log_binomial(int n, int k, const PQParams& pq);

/// Falling factorial [n][n-1]...[n-r+1], r terms.  r = 0 gives 1.
double pq_falling(int n, int r, const PQParams& pq);

/// (x + y)^n = prod_{j=0}^{n-1} (p^j x + q^j y).  n = 0 gives 1.
double pq_power_product(double x, double y, int n, const PQParams& pq);

/// (1 - x)^m = prod_{j=0}^{m-1} (p^j - q^j x).
double pq_one_minus(double x, int m, const PQParams& pq);

}  // namespace pqmkz
