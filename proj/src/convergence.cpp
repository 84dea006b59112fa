#include "pqmkz/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pqmkz {

SeqScheme remark1_scheme(double c_p, double c_q) {
  if (!(c_q > 0.0) || !(c_p > c_q))
    throw std::invalid_argument("remark1_scheme: need c_p > c_q > 0");
  SeqScheme s;
  s.rule = [c_p, c_q](int n) {
    if (n < 1) throw std::domain_error("scheme rule: need n >= 1");
    return PQParams(1.0 - 1.0 / (c_p * n), 1.0 - 1.0 / (c_q * n));
  };
  s.a = std::exp(-1.0 / c_p);
  s.b = std::exp(-1.0 / c_q);
  return s;
}

static void check_modulus_grids(int grid_size, int h_steps) {
  if (grid_size < 2 || h_steps < 1)
    throw std::invalid_argument("modulus: bad grid sizes");
}

double modulus(const Function1D& f, double delta, int grid_size, int h_steps) {
  check_modulus_grids(grid_size, h_steps);
  if (!(delta > 0.0)) return 0.0;
  delta = std::min(delta, 1.0);  // h beyond the interval length adds nothing
  const double dx = 1.0 / (grid_size - 1);
  double sup = 0.0;
  for (int m = 1; m <= h_steps; ++m) {
    const double h = delta * m / h_steps;
    const int last = static_cast<int>(std::floor((1.0 - h) / dx + 1e-9));
    for (int i = 0; i <= last; ++i) {
      const double x = i * dx;
      sup = std::max(sup, std::abs(f(x + h) - f(x)));
    }
  }
  return sup;
}

double modulus2(const Function1D& f, double delta, int grid_size, int h_steps) {
  check_modulus_grids(grid_size, h_steps);
  if (!(delta > 0.0)) return 0.0;
  delta = std::min(delta, 0.5);
  const double dx = 1.0 / (grid_size - 1);
  double sup = 0.0;
  for (int m = 1; m <= h_steps; ++m) {
    const double h = delta * m / h_steps;
    const int last = static_cast<int>(std::floor((1.0 - 2.0 * h) / dx + 1e-9));
    for (int i = 0; i <= last; ++i) {
      const double x = i * dx;
      sup = std::max(sup, std::abs(f(x + 2.0 * h) - 2.0 * f(x + h) + f(x)));
    }
  }
  return sup;
}

double alpha_n(int n, double x, const SeqScheme& scheme) {
  const PQParams pq = scheme.rule(n);
  const double q = pq.q();
  return x / q +
         (std::pow(pq.p(), n) - std::pow(q, n) * x) /
             (q * q * pq_integer(n, pq)) -
         x;
}

double delta_n(int n, double x, const SeqScheme& scheme,
               const OperatorConfig& cfg, bool statement_form) {
  const PQParams pq = scheme.rule(n);
  const double psi2 = central_moment(2, n, x, pq, cfg);
  if (statement_form) {
    // psi_1 can dip below zero for small n; clamp so the step stays real.
    const double psi1 = central_moment(1, n, x, pq, cfg);
    return std::sqrt(std::max(0.0, psi2 + psi1));
  }
  const double a = alpha_n(n, x, scheme);
  return std::sqrt(psi2 + a * a);
}

BoundCheck error_bound_check(const Function1D& f, int n, double x,
                             const SeqScheme& scheme, const OperatorConfig& cfg,
                             double C) {
  const PQParams pq = scheme.rule(n);
  BoundCheck out;
  out.lhs = std::abs(apply(f, n, x, pq, cfg).value - f(x));
  out.rhs = C * modulus2(f, delta_n(n, x, scheme, cfg)) +
            modulus(f, alpha_n(n, x, scheme));
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundCheck theorem53_check(const Function1D& f, int n, double x,
                           const SeqScheme& scheme, const OperatorConfig& cfg,
                           int grid_size) {
  const PQParams pq = scheme.rule(n);
  BoundCheck out;
  out.lhs = std::abs(apply(f, n, x, pq, cfg).value - f(x));
  const double d = std::sqrt(central_moment(2, n, x, pq, cfg));
  // 5% headroom: the grid modulus is a sup over a finite subset and can
  // only undershoot the true modulus.
  out.rhs = 2.0 * modulus(f, d, grid_size) * 1.05;
  out.holds = out.lhs <= out.rhs;
  return out;
}

double sup_error(const Function1D& f, int n, const SeqScheme& scheme,
                 const OperatorConfig& cfg, const std::vector<double>& grid) {
  const PQParams pq = scheme.rule(n);
  double sup = 0.0;
  for (double x : grid)
    sup = std::max(sup, std::abs(apply(f, n, x, pq, cfg).value - f(x)));
  return sup;
}

double empirical_min_C(const Function1D& f, int n, const SeqScheme& scheme,
                       const OperatorConfig& cfg,
                       const std::vector<double>& grid) {
  const PQParams pq = scheme.rule(n);
  double minC = 0.0;
  for (double x : grid) {
    const double lhs = std::abs(apply(f, n, x, pq, cfg).value - f(x));
    const double w = modulus(f, alpha_n(n, x, scheme));
    const double w2 = modulus2(f, delta_n(n, x, scheme, cfg));
    if (lhs > w && w2 > 1e-300) minC = std::max(minC, (lhs - w) / w2);
  }
  return minC;
}

DensityReport natural_density(const std::function<bool(std::int64_t)>& indicator,
                              std::int64_t N) {
  if (N < 1) throw std::invalid_argument("natural_density: need N >= 1");
  DensityReport rep;
  rep.N = N;
  std::int64_t next_mark = 10;
  for (std::int64_t j = 1; j <= N; ++j) {
    if (indicator(j)) ++rep.violator_count;
    if (j == next_mark && j != N) {
      rep.profile.emplace_back(j, static_cast<double>(rep.violator_count) / j);
      next_mark *= 10;
    }
  }
  rep.density = static_cast<double>(rep.violator_count) / N;
  rep.profile.emplace_back(N, rep.density);
  return rep;
}

DensityReport st_convergence_check(const std::function<double(std::int64_t)>& seq,
                                   double L, double eps, std::int64_t N) {
  if (!(eps > 0.0)) throw std::invalid_argument("st_convergence_check: eps <= 0");
  return natural_density(
      [&](std::int64_t n) { return std::abs(seq(n) - L) >= eps; }, N);
}

std::vector<double> make_grid(double lo, double step, double hi) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("make_grid");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + i * step;
  if (g.back() > hi + step * 0.5) g.pop_back();
  return g;
}

}  // namespace pqmkz
