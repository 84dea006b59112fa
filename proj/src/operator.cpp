#include "pqmkz/operator.hpp"

#include <cmath>
#include <limits>

#include "pqmkz/pq_integral.hpp"

namespace pqmkz {

static void check_eval_domain(int n, double x) {
  if (n < 1) throw std::domain_error("apply: need n >= 1");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("apply: need x in [0, 1]");
}

// sup of t^s over [0, 1/p], used for tail bounds
static double monomial_sup(int s, const PQParams& pq) {
  return std::pow(pq.p(), -s);
}

static double poly_sup(const std::vector<double>& c, const PQParams& pq) {
  double acc = 0.0;
  for (std::size_t s = 0; s < c.size(); ++s)
    acc += std::abs(c[s]) * monomial_sup(static_cast<int>(s), pq);
  return acc;
}

// Per-term moment factor prod_{i=1}^{s} [k+i]/[n+k+1+i]; together with
// p^{ns} this is ([n+1]/p^n)(pq)^{-k} * kernel_monomial_integral(n,k,s).
static double moment_ratio(int n, int k, int s, const PQParams& pq) {
  double acc = 1.0;
  for (int i = 1; i <= s; ++i)
    acc *= pq_integer(k + i, pq) / pq_integer(n + k + 1 + i, pq);
  return acc;
}

static EvalResult eval_polynomial(const std::vector<double>& coeffs, int n,
                                  double x, const PQParams& pq,
                                  const OperatorConfig& cfg) {
  const WeightSlice slice = mkz_weights(n, x, pq, cfg);
  const int deg = static_cast<int>(coeffs.size()) - 1;

  std::vector<double> pns(coeffs.size());
  for (int s = 0; s <= deg; ++s) pns[s] = std::pow(pq.p(), n * s);

  double value = 0.0;
  for (std::size_t k = 0; k < slice.weights.size(); ++k) {
    double ratio = 1.0;  // running prod [k+i]/[n+k+1+i]
    double term = coeffs[0];
    for (int s = 1; s <= deg; ++s) {
      ratio *= pq_integer(static_cast<int>(k) + s, pq) /
               pq_integer(n + static_cast<int>(k) + 1 + s, pq);
      term += coeffs[s] * pns[s] * ratio;
    }
    value += slice.weights[k] * term;
  }

  EvalResult out;
  out.value = value;
  out.k_used = slice.max_index();
  out.tail_bound = (1.0 - slice.mass) * poly_sup(coeffs, pq);
  return out;
}

EvalResult apply_monomial(int s, int n, double x, const PQParams& pq,
                          const OperatorConfig& cfg) {
  if (s < 0) throw std::domain_error("apply_monomial: s < 0");
  check_eval_domain(n, x);
  cfg.validate();
  if (x == 1.0) {
    return {1.0, 0, 0.0, 0.0};  // e_s(1) = 1, same under either endpoint rule
  }
  const WeightSlice slice = mkz_weights(n, x, pq, cfg);
  double acc = 0.0;
  for (std::size_t k = 0; k < slice.weights.size(); ++k)
    acc += slice.weights[k] * moment_ratio(n, static_cast<int>(k), s, pq);

  EvalResult out;
  out.value = std::pow(pq.p(), n * s) * acc;
  out.k_used = slice.max_index();
  out.tail_bound = (1.0 - slice.mass) * monomial_sup(s, pq);
  return out;
}

EvalResult apply(const Function1D& f, int n, double x, const PQParams& pq,
                 const OperatorConfig& cfg) {
  check_eval_domain(n, x);
  cfg.validate();
  if (x == 1.0) {
    return {cfg.literal_endpoint ? 1.0 : f(1.0), 0, 0.0, 0.0};
  }
  if (f.is_polynomial()) return eval_polynomial(f.coefficients(), n, x, pq, cfg);

  const WeightSlice slice = mkz_weights(n, x, pq, cfg);
  const double front = pq_integer(n + 1, pq) / std::pow(pq.p(), n);

  // Numeric route: per-term Jackson integral of b_{n,k}(qt) f(t).  The true
  // integral carries a (pq)^k factor, so scaling the absolute tolerance the
  // same way keeps every rescaled term accurate to cfg.integral_tol and the
  // total quadrature error below integral_tol * mass.
  double value = 0.0;
  double pqk = 1.0;  // (pq)^k
  double sup_f = 0.0;
  {
    // crude sup |f| over the node range for the tail bound
    double t = 1.0 / pq.p();
    for (int j = 0; j < 64; ++j) {
      sup_f = std::max(sup_f, std::abs(f(t)));
      t *= pq.ratio();
    }
    sup_f = std::max(sup_f, std::abs(f(0.0)));
  }
  for (std::size_t k = 0; k < slice.weights.size(); ++k) {
    const int ki = static_cast<int>(k);
    auto integrand = [&](double t) { return kernel_value(n, ki, t, pq) * f(t); };
    const double tol = cfg.integral_tol * pqk / front;
    const IntegralResult ir = jackson_integral(integrand, pq, tol, cfg.max_terms);
    value += slice.weights[k] * (front / pqk) * ir.value;
    pqk *= pq.p() * pq.q();
  }

  EvalResult out;
  out.value = value;
  out.k_used = slice.max_index();
  out.tail_bound = (1.0 - slice.mass) * sup_f;
  out.integral_tol = cfg.integral_tol;
  return out;
}

double central_moment(int i, int n, double x, const PQParams& pq,
                      const OperatorConfig& cfg) {
  if (i < 0) throw std::domain_error("central_moment: i < 0");
  // binomial expansion of (t - x)^i through the raw moments
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= i; ++j) {
    const double mj = apply_monomial(j, n, x, pq, cfg).value;
    const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * std::pow(x, i - j) * mj;
    binom = binom * (i - j) / (j + 1);
  }
  return acc;
}

static constexpr double kBoundSlackScale = 1e-9;

BoundsReport theorem1_bounds(int i, int n, double x, const PQParams& pq,
                             const OperatorConfig& cfg) {
  check_eval_domain(n, x);
  const double p = pq.p(), q = pq.q();
  const double en = pq_integer(n, pq);

  BoundsReport rep;
  rep.x = x;
  rep.actual = apply_monomial(i, n, x, pq, cfg).value;
  switch (i) {
    case 0:
      rep.lower = rep.upper = 1.0;
      break;
    case 1:
      rep.lower = x / (q * q) * (1.0 - (q + 1.0) / en);
      rep.upper = x / q + (std::pow(p, n) - std::pow(q, n) * x) / (q * q * en);
      break;
    case 2: {
      if (n < 2) throw std::domain_error("theorem1_bounds: i=2 needs n >= 2");
      const double en1 = pq_integer(n - 1, pq);
      const double an = std::pow(p, n) - std::pow(q, n) * x;
      const double an1 = std::pow(p, n - 1) - std::pow(q, n - 1) * x;
      rep.lower = -std::numeric_limits<double>::infinity();
      rep.upper = x * x / (q * q) +
                  (p + q) * (p + q) / std::pow(q, 5) * an / en * x +
                  p * (p + q) / std::pow(q, 6) * an * an1 / (en * en1);
      break;
    }
    default:
      throw std::domain_error("theorem1_bounds: i must be 0, 1 or 2");
  }
  const double slack = kBoundSlackScale * (1.0 + std::abs(rep.upper));
  rep.holds = rep.actual >= rep.lower - slack && rep.actual <= rep.upper + slack;
  return rep;
}

BoundsReport corollary1_bounds(int i, int n, double x, const PQParams& pq,
                               const OperatorConfig& cfg) {
  check_eval_domain(n, x);
  const double p = pq.p(), q = pq.q();
  const double en = pq_integer(n, pq);

  BoundsReport rep;
  rep.x = x;
  rep.actual = central_moment(i, n, x, pq, cfg);
  rep.lower = -std::numeric_limits<double>::infinity();
  switch (i) {
    case 1:
      rep.upper = (std::pow(p, n) - std::pow(q, n) * x) / (q * q * en) +
                  (1.0 / q - 1.0) * x;
      break;
    case 2: {
      if (n < 2) throw std::domain_error("corollary1_bounds: i=2 needs n >= 2");
      const double en1 = pq_integer(n - 1, pq);
      const double an = std::pow(p, n) - std::pow(q, n) * x;
      const double an1 = std::pow(p, n - 1) - std::pow(q, n - 1) * x;
      rep.upper = x * x * (1.0 - 1.0 / (q * q) + 2.0 * (q + 1.0) / (q * q * en)) +
                  (p + q) * (p + q) / std::pow(q, 5) * an / en * x +
                  p * (p + q) / std::pow(q, 6) * an * an1 / (en * en1);
      break;
    }
    default:
      throw std::domain_error("corollary1_bounds: i must be 1 or 2");
  }
  const double slack = kBoundSlackScale * (1.0 + std::abs(rep.upper));
  rep.holds = rep.actual <= rep.upper + slack;
  return rep;
}

}  // namespace pqmkz
