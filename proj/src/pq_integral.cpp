#include "pqmkz/pq_integral.hpp"

#include <algorithm>
#include <cmath>

namespace pqmkz {

IntegralResult jackson_integral(const std::function<double(double)>& f,
                                const PQParams& pq, double tol,
                                std::size_t max_terms) {
  if (!(tol >= 0.0)) throw std::invalid_argument("jackson_integral: bad tol");
  if (max_terms == 0) throw std::invalid_argument("jackson_integral: zero cap");

  const double p = pq.p(), q = pq.q(), r = pq.ratio();
  double sum = 0.0;
  double node = 1.0 / p;       // t_0
  double wtail = 1.0;          // weight not yet consumed = (q/p)^j before term j
  double f2 = 0.0, f1 = 0.0;   // |f| at the two previous nodes

  for (std::size_t j = 0; j < max_terms; ++j) {
    const double fj = f(node);
    sum += (p - q) * node * fj;
    wtail *= r;

    const double recent = std::max({std::abs(fj), f1, f2});
    const double bound = wtail * recent * 2.0;
    // A couple of nodes give the "last three" window real content; before
    // that the bound can only see a single sample.
    if (j >= 3 && bound < tol) {
      return {sum, j + 1, bound};
    }
    f2 = f1;
    f1 = std::abs(fj);
    node *= r;
  }
  throw truncation_error("jackson_integral: no convergence within term cap");
}

double pq_beta_closed(int t, int s, const PQParams& pq) {
  if (t < 1 || s < 1) throw std::domain_error("pq_beta_closed: need t,s >= 1");
  const double st = s + t;
  const double expo =
      ((st - 1.0) * (st - 2.0) - (t - 1.0) * (t - 2.0)) / 2.0 - t + 1.0;
  const double lg = expo * std::log(pq.p()) + pq_log_factorial(t - 1, pq) +
                    pq_log_factorial(s - 1, pq) -
                    pq_log_factorial(s + t - 1, pq);
  return std::exp(lg);
}

IntegralResult pq_beta_integral(int t, int s, const PQParams& pq, double tol,
                                std::size_t max_terms) {
  if (t < 1 || s < 1)
    throw std::domain_error("pq_beta_integral: need t,s >= 1");
  const double q = pq.q();
  auto integrand = [&](double x) {
    // x^{t-1} (1 - qx)^{s-1} with the power product expanded in place
    return std::pow(x, t - 1) * pq_power_product(1.0, -q * x, s - 1, pq);
  };
  return jackson_integral(integrand, pq, tol, max_terms);
}

}  // namespace pqmkz
