#include "pqmkz/function.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace pqmkz {

Function1D::Function1D(std::string name, std::function<double(double)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("Function1D: empty callable");
}

static double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Function1D Function1D::polynomial(std::string name,
                                  std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  Function1D f(std::move(name),
               [coeffs](double t) { return horner(coeffs, t); });
  f.coeffs_ = std::move(coeffs);
  return f;
}

Function1D Function1D::monomial(int degree) {
  if (degree < 0) throw std::domain_error("Function1D::monomial: degree < 0");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  return polynomial("e" + std::to_string(degree), std::move(c));
}

Function1D Function1D::from_roots(std::string name,
                                  const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    // multiply by (t - r)
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i)
      c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return polynomial(std::move(name), std::move(c));
}

const std::vector<double>& Function1D::coefficients() const {
  if (!coeffs_) throw std::logic_error("Function1D: not a polynomial");
  return *coeffs_;
}

std::vector<Function1D> figure_polynomials() {
  return {
      Function1D::from_roots("fig1", {2.0 / 3.0, 4.0 / 5.0}),
      Function1D::from_roots("fig2", {1.0 / 4.0, 2.0 / 3.0, 4.0 / 5.0}),
      Function1D::from_roots("fig3",
                             {1.0 / 3.0, 2.0 / 3.0, 3.0 / 5.0, 4.0 / 5.0}),
      Function1D::from_roots(
          "fig4", {1.0 / 3.0, 2.0 / 3.0, 3.0 / 5.0, 4.0 / 5.0, 5.0 / 7.0}),
  };
}

Function1D parse_function(const std::string& spec) {
  if (spec.size() >= 2 && spec[0] == 'e') {
    bool digits = true;
    for (std::size_t i = 1; i < spec.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(spec[i]));
    if (digits) return Function1D::monomial(std::stoi(spec.substr(1)));
  }
  if (spec.rfind("fig", 0) == 0 && spec.size() == 4 && spec[3] >= '1' &&
      spec[3] <= '4') {
    return figure_polynomials()[static_cast<std::size_t>(spec[3] - '1')];
  }
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> c;
    std::stringstream ss(spec.substr(5));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size())
        throw std::invalid_argument("parse_function: bad coefficient '" + tok +
                                    "'");
      c.push_back(v);
    }
    if (c.empty())
      throw std::invalid_argument("parse_function: empty coefficient list");
    return Function1D::polynomial(spec, std::move(c));
  }
  throw std::invalid_argument("parse_function: unknown function spec '" +
                              spec + "'");
}

}  // namespace pqmkz
