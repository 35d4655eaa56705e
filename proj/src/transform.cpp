#include "nicefn/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kPi = std::numbers::pi;

// Transform of one term p(x) exp(-pi x.Qx + b.x).
//
// The bare exponential maps to
//   det(Q)^{-1/2} exp(b.Q^{-1}b / 4pi) exp(-pi xi.Q^{-1}xi - i (Q^{-1}b).xi),
// and each monomial x^alpha contributes (-2 pi i)^{-|alpha|} d^alpha of that.
NiceTerm transform_term(const NiceTerm& t) {
  const std::size_t dim = t.dim();
  const SpdForm inv = t.quad.inverse();
  const ComplexVector inv_b = t.quad.solve(t.shift);
  const Complex constant = std::exp(dot(t.shift, inv_b) / (4.0 * kPi)) / std::sqrt(t.quad.determinant());
  const ComplexVector new_shift = Complex(0.0, -1.0) * inv_b;

  // slopes[j] = derivative of the new exponent along axis j
  std::vector<Polynomial> slopes;
  slopes.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    const ComplexVector coeffs = (-2.0 * kPi) * inv.matrix().row(row).transpose().cast<Complex>();
    slopes.push_back(Polynomial::linear(coeffs, new_shift(row)));
  }

  // derivative_poly[beta] = polynomial factor of d^beta exp(new exponent);
  // the map iterates in graded order, so every predecessor is ready.
  std::map<MultiIndex, Polynomial, GradedLexLess> derivative_poly;
  derivative_poly.emplace(MultiIndex(dim), Polynomial::constant(dim, 1.0));
  auto derivative_of = [&](const MultiIndex& alpha, auto&& self) -> const Polynomial& {
    auto it = derivative_poly.find(alpha);
    if (it != derivative_poly.end()) return it->second;
    std::size_t axis = 0;
    while (alpha[axis] == 0) ++axis;
    const Polynomial& prev = self(alpha - MultiIndex::unit(dim, axis), self);
    Polynomial next = prev.partial(axis) + prev * slopes[axis];
    return derivative_poly.emplace(alpha, std::move(next)).first->second;
  };

  const Complex inv_two_pi_i = 1.0 / Complex(0.0, -2.0 * kPi);
  Polynomial poly(dim);
  for (const auto& [alpha, c] : t.poly.terms()) {
    const Complex factor = c * std::pow(inv_two_pi_i, alpha.degree());
    poly += derivative_of(alpha, derivative_of) * factor;
  }
  poly *= constant;
  return NiceTerm(std::move(poly), inv, new_shift);
}

}  // namespace

NiceFunction fourier_transform(const NiceFunction& f) {
  std::vector<NiceTerm> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back(transform_term(t));
  return canonicalize(NiceFunction(f.dim(), std::move(terms)));
}

NiceFunction inverse_transform(const NiceFunction& g) {
  return compose_linear(fourier_transform(g), LinearMap::scaling(g.dim(), -1.0));
}

Complex integral(const NiceFunction& f) {
  return fourier_transform(f).evaluate(ComplexVector::Zero(static_cast<Eigen::Index>(f.dim())));
}

InnerProductValue inner_product(const NiceFunction& f, const NiceFunction& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("inner_product: dimensions differ");
  return {integral(multiply(f, conjugate(g)))};
}

NiceFunction convolve(const NiceFunction& f, const NiceFunction& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("convolve: dimensions differ");
  return inverse_transform(multiply(fourier_transform(f), fourier_transform(g)));
}

double RuleReport::max() const {
  return std::max({derivative, translation, modulation, change_of_variables});
}

RuleReport transform_rules_check(const NiceFunction& f, const MultiIndex& alpha, const ComplexVector& a,
                                 const ComplexVector& b, const LinearMap& t) {
  const std::size_t dim = f.dim();
  if (alpha.size() != dim || static_cast<std::size_t>(a.size()) != dim ||
      static_cast<std::size_t>(b.size()) != dim || t.dim() != dim) {
    throw DimensionMismatch("transform_rules_check: argument dimensions differ");
  }
  if (!t.invertible()) throw SingularMap("transform_rules_check: linear map is singular");

  const NiceFunction f_hat = fourier_transform(f);
  RuleReport report;

  const Complex two_pi_i(0.0, 2.0 * kPi);
  report.derivative = coefficient_distance(fourier_transform(differentiate(f, alpha)),
                                           std::pow(two_pi_i, alpha.degree()) * monomial_multiply(f_hat, alpha));

  report.translation = coefficient_distance(fourier_transform(translate(f, a)), modulate(f_hat, a));

  report.modulation = coefficient_distance(fourier_transform(modulate(f, b)), translate(f_hat, -b));

  const Complex scale = 1.0 / std::abs(t.determinant());
  report.change_of_variables = coefficient_distance(fourier_transform(compose_linear(f, t)),
                                                    scale * compose_linear(f_hat, t.inverse_transpose()));
  return report;
}

}  // namespace nicefn
