#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pqmkz {

/// A named real function on [0, 1/p].  Polynomials carry their coefficient
/// list (ascending powers) so operator code can route them through closed
/// forms instead of numeric quadrature.
class Function1D {
 public:
  Function1D(std::string name, std::function<double(double)> fn);

  static Function1D polynomial(std::string name, std::vector<double> coeffs);
  static Function1D monomial(int degree);  // e_i: t -> t^i, named "e<i>"
  /// Monic polynomial prod (t - r) over the given roots.
  static Function1D from_roots(std::string name,
                               const std::vector<double>& roots);

  double operator()(double t) const { return fn_(t); }

  const std::string& name() const noexcept { return name_; }
  bool is_polynomial() const noexcept { return coeffs_.has_value(); }
  /// Coefficients, ascending powers.  Throws if not a polynomial.
  const std::vector<double>& coefficients() const;

 private:
  std::string name_;
  std::function<double(double)> fn_;
  std::optional<std::vector<double>> coeffs_;
};

/// The four sample polynomials used by the figure command:
///   (x-2/3)(x-4/5)
///   (x-1/4)(x-2/3)(x-4/5)
///   (x-1/3)(x-2/3)(x-3/5)(x-4/5)
///   (x-1/3)(x-2/3)(x-3/5)(x-4/5)(x-5/7)
std::vector<Function1D> figure_polynomials();

/// Resolve a CLI function spec: "e0".."e9", "fig1".."fig4", or
/// "poly:c0,c1,..." (ascending coefficients).  Throws on unknown names.
Function1D parse_function(const std::string& spec);

}  // namespace pqmkz
