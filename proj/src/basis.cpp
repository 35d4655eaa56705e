#include "nicefn/basis.hpp"

#include <algorithm>
#include <cmath>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kPivotRatio = 1e-10;
constexpr double kDropThreshold = 1e-12;

Polynomial derivative_polynomial(const MultiIndex& order, const SpdForm& quad, const ComplexVector& shift) {
  const auto term = NiceTerm::gaussian(quad, shift);
  const auto expanded = differentiate(NiceFunction(quad.dim(), {term}), order);
  if (expanded.terms().empty()) return Polynomial(quad.dim());
  return expanded.terms().front().poly;
}

}  // namespace

NiceFunction expand_derivative_element(const DerivativeBasisElement& element) {
  if (element.order.size() != element.quad.dim() ||
      static_cast<std::size_t>(element.shift.size()) != element.quad.dim()) {
    throw DimensionMismatch("derivative basis element has inconsistent dimensions");
  }
  return differentiate(NiceFunction::from_term(NiceTerm::gaussian(element.quad, element.shift)), element.order);
}

NiceFunction expand(const DerivativeExpansion& expansion) {
  const std::size_t dim = expansion.quad.dim();
  Polynomial poly(dim);
  for (const auto& [beta, c] : expansion.coeffs) {
    poly += derivative_polynomial(beta, expansion.quad, expansion.shift) * c;
  }
  return canonicalize(NiceFunction(dim, {NiceTerm(std::move(poly), expansion.quad, expansion.shift)}));
}

DerivativeExpansion to_derivative_basis(const NiceTerm& t) {
  const std::size_t dim = t.dim();
  const int top = t.poly.degree();

  DerivativeExpansion out{{}, t.quad, t.shift};
  if (t.poly.empty()) return out;

  std::map<MultiIndex, Polynomial, GradedLexLess> basis;
  for (const auto& beta : multi_indices_up_to(dim, top)) {
    basis.emplace(beta, derivative_polynomial(beta, t.quad, t.shift));
  }

  // The degree-k part of d^beta e^Q with |beta| = k is prod_j (-2 pi (Qx)_j)^beta_j;
  // lower-order derivatives never reach degree k, so each block solves alone
  // once higher blocks are subtracted from the residual.
  Polynomial residual = t.poly;
  for (int k = top; k >= 0; --k) {
    const auto block = multi_indices_of_degree(dim, k);
    const auto size = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXcd system(size, size);
    Eigen::VectorXcd rhs(size);
    for (Eigen::Index row = 0; row < size; ++row) {
      rhs(row) = residual.coefficient(block[static_cast<std::size_t>(row)]);
      for (Eigen::Index col = 0; col < size; ++col) {
        system(row, col) = basis.at(block[static_cast<std::size_t>(col)]).coefficient(block[static_cast<std::size_t>(row)]);
      }
    }
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(system);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(pivots.minCoeff() > kPivotRatio * pivots.maxCoeff())) {
      throw SolveFailure("derivative-basis block of degree " + std::to_string(k) + " is numerically singular");
    }
    const Eigen::VectorXcd solution = lu.solve(rhs);
    for (Eigen::Index col = 0; col < size; ++col) {
      const auto& beta = block[static_cast<std::size_t>(col)];
      const Complex c = solution(col);
      if (c == Complex{}) continue;
      out.coeffs[beta] = c;
      residual -= basis.at(beta) * c;
    }
  }

  double scale = 0.0;
  for (const auto& [beta, c] : out.coeffs) scale = std::max(scale, std::abs(c));
  std::erase_if(out.coeffs, [&](const auto& entry) { return std::abs(entry.second) < kDropThreshold * scale; });
  return out;
}

std::vector<DerivativeExpansion> function_to_derivative_basis(const NiceFunction& f) {
  std::vector<DerivativeExpansion> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back(to_derivative_basis(t));
  return out;
}

}  // namespace nicefn
