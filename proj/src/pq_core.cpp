#include "pqmkz/pq_core.hpp"

#include <cmath>
#include <string>

namespace pqmkz {

PQParams::PQParams(double p, double q) : p_(p), q_(q) {
  if (!(q > 0.0) || !(q < p) || !(p <= 1.0)) {
    throw std::invalid_argument("PQParams: need 0 < q < p <= 1, got p=" +
                                std::to_string(p) + " q=" + std::to_string(q));
  }
}

static void check_nonneg(int n, const char* who) {
  if (n < 0) throw std::domain_error(std::string(who) + ": negative index");
}

double pq_integer(int n, const PQParams& pq) {
  check_nonneg(n, "pq_integer");
  if (n == 0) return 0.0;
  return (std::pow(pq.p(), n) - std::pow(pq.q(), n)) / (pq.p() - pq.q());
}

double pq_log_integer(int n, const PQParams& pq) {
  if (n < 1) throw std::domain_error("pq_log_integer: need n >= 1");
  // [n] = p^{n-1} (1 - r^n)/(1 - r) with r = q/p, all factors positive.
  const double r = pq.ratio();
  return (n - 1) * std::log(pq.p()) + std::log1p(-std::pow(r, n)) -
         std::log1p(-r);
}

double pq_factorial(int n, const PQParams& pq) {
  check_nonneg(n, "pq_factorial");
  double acc = 1.0;
  for (int i = 1; i <= n; ++i) acc *= pq_integer(i, pq);
  return acc;
}

double pq_log_factorial(int n, const PQParams& pq) {
  check_nonneg(n, "pq_log_factorial");
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) acc += pq_log_integer(i, pq);
  return acc;
}

double pq_binomial(int n, int k, const PQParams& pq) {
  check_nonneg(n, "pq_binomial");
  if (k < 0 || k > n) throw std::domain_error("pq_binomial: need 0 <= k <= n");
  if (k > n - k) k = n - k;
  // [n choose k] = prod_{i=1}^{k} [n-k+i]/[i]; each ratio is moderate even
  // where the factorials themselves underflow.
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc *= pq_integer(n - k + i, pq) / pq_integer(i, pq);
  return acc;
}

double pq_log_binomial(int n, int k, const PQParams& pq) {
  check_nonneg(n, "pq_log_binomial");
  if (k < 0 || k > n) throw std::domain_error("pq_log_binomial: need 0 <= k <= n");
  if (k > n - k) k = n - k;
  double acc = 0.0;
  for (int i = 1; i <= k; ++i)
    acc += pq_log_integer(n - k + i, pq) - pq_log_integer(i, pq);
  return acc;
}

double pq_falling(int n, int r, const PQParams& pq) {
  check_nonneg(n, "pq_falling");
  if (r < 0 || r > n) throw std::domain_error("pq_falling: need 0 <= r <= n");
  double acc = 1.0;
  for (int j = 0; j < r; ++j) acc *= pq_integer(n - j, pq);
  return acc;
}

double pq_power_product(double x, double y, int n, const PQParams& pq) {
  check_nonneg(n, "pq_power_product");
  double acc = 1.0, pj = 1.0, qj = 1.0;
  for (int j = 0; j < n; ++j) {
    acc *= pj * x + qj * y;
    pj *= pq.p();
    qj *= pq.q();
  }
  return acc;
}

double pq_one_minus(double x, int m, const PQParams& pq) {
  return pq_power_product(1.0, -x, m, pq);
}

}  // namespace pqmkz
