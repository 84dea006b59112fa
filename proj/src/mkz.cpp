#include "pqmkz/mkz.hpp"

#include <cmath>

namespace pqmkz {

void OperatorConfig::validate() const {
  if (!(tail_tol > 0.0) || !(tail_tol < 1.0))
    throw std::invalid_argument("OperatorConfig: tail_tol outside (0,1)");
  if (max_terms == 0)
    throw std::invalid_argument("OperatorConfig: max_terms == 0");
  if (!(integral_tol > 0.0))
    throw std::invalid_argument("OperatorConfig: integral_tol <= 0");
  if (fixed_terms && *fixed_terms + 1 > max_terms)
    throw std::invalid_argument("OperatorConfig: fixed_terms exceeds cap");
}

static void check_weight_domain(int n, double x) {
  if (n < 1) throw std::domain_error("mkz: need n >= 1");
  if (!(x >= 0.0) || !(x < 1.0))
    throw std::domain_error("mkz: need x in [0, 1)");
}

// Seed of the weight recurrence: m_{n,0}(x) = (1-x)^{n+1}_{p,q} / p^{n(n+1)/2}
// fused to prod_{j=0}^{n} (1 - (q/p)^j x) so the p powers cancel exactly.
static double weight_seed(int n, double x, const PQParams& pq) {
  double acc = 1.0, rj = 1.0;
  for (int j = 0; j <= n; ++j) {
    acc *= 1.0 - rj * x;
    rj *= pq.ratio();
  }
  return acc;
}

double mkz_weight(int n, int k, double x, const PQParams& pq) {
  check_weight_domain(n, x);
  if (k < 0) throw std::domain_error("mkz_weight: k < 0");
  double w = weight_seed(n, x, pq);
  const double pn = std::pow(pq.p(), -n);
  for (int i = 0; i < k; ++i)
    w *= pq_integer(n + i + 1, pq) / pq_integer(i + 1, pq) * x * pn;
  return w;
}

WeightSlice mkz_weights(int n, double x, const PQParams& pq,
                        const OperatorConfig& cfg) {
  check_weight_domain(n, x);
  cfg.validate();

  WeightSlice slice;
  double w = weight_seed(n, x, pq);
  slice.weights.push_back(w);
  slice.mass = w;

  const double pn = std::pow(pq.p(), -n);
  const std::size_t cap =
      cfg.fixed_terms ? *cfg.fixed_terms + 1 : cfg.max_terms;

  for (std::size_t k = 1; k < cap; ++k) {
    if (!cfg.fixed_terms && slice.mass >= 1.0 - cfg.tail_tol) return slice;
    const double ratio = pq_integer(static_cast<int>(n + k), pq) /
                         pq_integer(static_cast<int>(k), pq) * x * pn;
    w *= ratio;
    slice.weights.push_back(w);
    slice.mass += w;
    // The term ratio decreases monotonically to x, so once it is below 1
    // the true remaining mass is at most this geometric bound.  The mass
    // test alone can fail to trigger when thousands of rounded terms park
    // the accumulated sum a hair under the 1 - tail_tol line.
    if (!cfg.fixed_terms && ratio < 1.0 &&
        w * ratio / (1.0 - ratio) <= cfg.tail_tol)
      return slice;
  }
  if (cfg.fixed_terms || slice.mass >= 1.0 - cfg.tail_tol) return slice;
  throw truncation_error("mkz_weights: mass " + std::to_string(slice.mass) +
                         " below 1 - tail_tol at the term cap");
}

double kernel_value(int n, int k, double t, const PQParams& pq) {
  if (n < 1) throw std::domain_error("kernel_value: need n >= 1");
  if (k < 0) throw std::domain_error("kernel_value: k < 0");
  const double u = pq.q() * t;
  // (1-qt)^n_{p,q} / p^{n(n-1)/2} as a product of factors (1 - (q/p)^j qt)
  double acc = 1.0, rj = 1.0;
  for (int j = 0; j < n; ++j) {
    acc *= 1.0 - rj * u;
    rj *= pq.ratio();
  }
  // [n+k+1 choose k] (qt)^k / p^{k(n-1)}, one bounded ratio per step
  const double pn1 = std::pow(pq.p(), -(n - 1));
  for (int i = 1; i <= k; ++i)
    acc *= pq_integer(n + 1 + i, pq) / pq_integer(i, pq) * u * pn1;
  return acc;
}

double kernel_monomial_integral(int n, int k, int s, const PQParams& pq) {
  if (n < 1 || k < 0 || s < 0)
    throw std::domain_error("kernel_monomial_integral: bad indices");
  const double lg = pq_log_factorial(n + k + 1, pq) +
                    pq_log_factorial(k + s, pq) - pq_log_factorial(k, pq) -
                    pq_log_factorial(n + k + s + 1, pq) +
                    k * (std::log(pq.p()) + std::log(pq.q())) -
                    pq_log_integer(n + 1, pq) +
                    n * (s + 1) * std::log(pq.p());
  return std::exp(lg);
}

double lemma2_lhs(int n, int r, double x, const PQParams& pq,
                  const OperatorConfig& cfg) {
  if (r < 1 || n <= r) throw std::domain_error("lemma2_lhs: need n > r >= 1");
  if (!(x >= 0.0) || !(x < 1.0))
    throw std::domain_error("lemma2_lhs: need x in [0, 1)");
  cfg.validate();

  double term = pq_one_minus(x, n + 1, pq) / pq_falling(n, r, pq);
  double sum = term;
  const double pr = std::pow(pq.p(), r - n);
  // Term ratio x * p^{r-n} [n+k-r+1]/[k+1] decreases monotonically to x,
  // so once it is below 1 the remaining tail is a plain geometric series.
  for (std::size_t k = 0; k < cfg.max_terms; ++k) {
    const double ratio = x * pr *
                         pq_integer(static_cast<int>(n + k - r + 1), pq) /
                         pq_integer(static_cast<int>(k + 1), pq);
    term *= ratio;
    sum += term;
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= cfg.tail_tol * sum)
      return sum;
  }
  throw truncation_error("lemma2_lhs: no convergence within term cap");
}

double lemma2_rhs(int n, int r, double x, const PQParams& pq) {
  if (r < 1 || n <= r) throw std::domain_error("lemma2_rhs: need n > r >= 1");
  double num = 1.0;
  for (int j = 0; j < r; ++j)
    num *= std::pow(pq.p(), n - j) - std::pow(pq.q(), n - j) * x;
  const int m = n - r;
  return num / pq_falling(n, r, pq) *
         std::pow(pq.p(), 0.5 * m * (m + 1));
}

bool lemma3_check(int n, int k, int r, const PQParams& pq) {
  if (n + k < 1 || r < 0) throw std::domain_error("lemma3_check: bad indices");
  const double lhs = 1.0 / pq_integer(n + k + r, pq);
  const double rhs = 1.0 / (std::pow(pq.q(), r) * pq_integer(n + k, pq));
  return lhs <= rhs;
}

}  // namespace pqmkz
