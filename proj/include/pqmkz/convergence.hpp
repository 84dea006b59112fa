#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pqmkz/function.hpp"
#include "pqmkz/mkz.hpp"
#include "pqmkz/operator.hpp"

namespace pqmkz {

/// A parameter sequence n -> (p_n, q_n) with both tending to 1, plus the
/// limits of p_n^n and q_n^n (called a and b below).  Under such a scheme
/// [n]_{p_n,q_n} -> infinity and the operators converge on C[0,1].
struct SeqScheme {
  std::function<PQParams(int)> rule;
  double a = 0.0;  // lim p_n^n
  double b = 0.0;  // lim q_n^n
};

/// The standard scheme q_n = 1 - 1/(c_q n), p_n = 1 - 1/(c_p n) with
/// c_p > c_q > 0 (so q_n < p_n); then a = e^{-1/c_p}, b = e^{-1/c_q}.
/// rule(n) throws for the finitely many n with q_n <= 0 when c_q <= 1.
SeqScheme remark1_scheme(double c_p = 3.0, double c_q = 2.0);

/// First modulus of continuity on [0,1],
///   w(f, d) = sup_{0 < h <= d} sup_{x, x+h in [0,1]} |f(x+h) - f(x)|,
/// approximated on a uniform x grid (grid_size points) and h grid
/// (h_steps multiples of d/h_steps).  Returns 0 for d <= 0.
double modulus(const Function1D& f, double delta, int grid_size = 2001,
               int h_steps = 512);

/// Second modulus,
///   w2(f, d) = sup_{0 < h <= d} sup_{x, x+2h in [0,1]}
///              |f(x+2h) - 2 f(x+h) + f(x)|,
/// same grids.  The pair (x, x+2h) is constrained to [0,1].
double modulus2(const Function1D& f, double delta, int grid_size = 2001,
                int h_steps = 512);

/// Shift displacement of the first moment under a scheme,
///   alpha_n(x) = x/q_n + (p_n^n - q_n^n x)/(q_n^2 [n]) - x.
double alpha_n(int n, double x, const SeqScheme& scheme);

/// Step used by the smoothness estimate:
///   delta_n(x) = sqrt(M((t-x)^2; x) + alpha_n(x)^2)
/// by default; statement_form instead uses sqrt(psi_2 + psi_1) with the
/// operator's own first central moment, kept for comparison.
double delta_n(int n, double x, const SeqScheme& scheme,
               const OperatorConfig& cfg = {}, bool statement_form = false);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Checks |M(f; x) - f(x)| <= C w2(f, delta_n(x)) + w(f, alpha_n(x)) at one
/// point, with caller-supplied constant C.
BoundCheck error_bound_check(const Function1D& f, int n, double x,
                             const SeqScheme& scheme, const OperatorConfig& cfg,
                             double C);

/// Checks |M(f; x) - f(x)| <= 2 w(f, sqrt(M((t-x)^2; x))) at one point.
/// The right side gets a 1.05 factor to absorb the grid approximation of w.
BoundCheck theorem53_check(const Function1D& f, int n, double x,
                           const SeqScheme& scheme,
                           const OperatorConfig& cfg = {}, int grid_size = 2001);

/// max over the grid of |M(f; x) - f(x)| under scheme.rule(n).
double sup_error(const Function1D& f, int n, const SeqScheme& scheme,
                 const OperatorConfig& cfg, const std::vector<double>& grid);

/// Smallest C that would make error_bound_check pass on every grid point:
///   max over x of (lhs - w(f, alpha_n)) / w2(f, delta_n), floored at 0.
/// Reported, never asserted.
double empirical_min_C(const Function1D& f, int n, const SeqScheme& scheme,
                       const OperatorConfig& cfg,
                       const std::vector<double>& grid);

struct DensityReport {
  std::int64_t N = 0;
  std::int64_t violator_count = 0;
  double density = 0.0;
  /// (N_i, density at N_i) at decade marks 10, 100, ... plus N itself.
  std::vector<std::pair<std::int64_t, double>> profile;
};

/// Natural density of {j <= N : indicator(j)} as count/N, with a decade
/// profile showing the trend.
DensityReport natural_density(const std::function<bool(std::int64_t)>& indicator,
                              std::int64_t N);

/// Density of the eps-violator set {n <= N : |seq(n) - L| >= eps}; a
/// sequence converges statistically to L iff this tends to 0 for every eps.
DensityReport st_convergence_check(const std::function<double(std::int64_t)>& seq,
                                   double L, double eps, std::int64_t N);

/// Uniform grid lo, lo+step, ..., through hi (inclusive up to rounding).
std::vector<double> make_grid(double lo, double step, double hi);

}  // namespace pqmkz
