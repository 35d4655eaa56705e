#pragma once

#include <map>
#include <vector>

#include "nicefn/nice_function.hpp"

namespace nicefn {

// d^order [exp(-pi x.quad x + shift.x)]
struct DerivativeBasisElement {
  MultiIndex order;
  SpdForm quad;
  ComplexVector shift;
};

// sum_beta coeffs[beta] * d^beta [exp(-pi x.quad x + shift.x)]
struct DerivativeExpansion {
  std::map<MultiIndex, Complex, GradedLexLess> coeffs;
  SpdForm quad;
  ComplexVector shift;
};

// Rewrites the derivative element as a single monomial-type term whose
// polynomial has degree |order|.
NiceFunction expand_derivative_element(const DerivativeBasisElement& element);

NiceFunction expand(const DerivativeExpansion& expansion);

// Writes t in the derivative basis sharing t's (quad, shift). Solves the
// graded-triangular system one degree block at a time, top degree first;
// throws SolveFailure when a block's pivot ratio falls below 1e-10.
DerivativeExpansion to_derivative_basis(const NiceTerm& t);

// One expansion per term of the canonical function, in term order.
std::vector<DerivativeExpansion> function_to_derivative_basis(const NiceFunction& f);

}  // namespace nicefn
