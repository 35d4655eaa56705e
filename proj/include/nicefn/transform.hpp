#pragma once

#include "nicefn/linear_map.hpp"
#include "nicefn/nice_function.hpp"

namespace nicefn {

// Fourier transform with the kernel exp(-2 pi i x.xi); exp(-pi x.x) is self-dual.
NiceFunction fourier_transform(const NiceFunction& f);

// Kernel exp(+2 pi i xi.x); computed as the forward transform composed with -I.
NiceFunction inverse_transform(const NiceFunction& g);

// Integral over R^n, i.e. the transform evaluated at 0.
Complex integral(const NiceFunction& f);

// L^2 pairing  integral f(x) conj(g(x)) dx.
struct InnerProductValue {
  Complex value;
};

InnerProductValue inner_product(const NiceFunction& f, const NiceFunction& g);

// (f * g)(x) = integral f(y) g(x - y) dy, computed spectrally.
NiceFunction convolve(const NiceFunction& f, const NiceFunction& g);

// Discrepancy of each symbolic transform rule, as coefficient_distance between
// the two sides.
struct RuleReport {
  double derivative = 0.0;          // FT(d^alpha f) vs (2 pi i)^|alpha| xi^alpha f^
  double translation = 0.0;         // FT(f(x - a)) vs exp(-2 pi i xi.a) f^
  double modulation = 0.0;          // FT(f exp(-2 pi i x.b)) vs f^(xi + b)
  double change_of_variables = 0.0; // FT(f o T) vs |det T|^{-1} f^ o T~
  double max() const;
};

// Throws SingularMap when T is not invertible.
RuleReport transform_rules_check(const NiceFunction& f, const MultiIndex& alpha, const ComplexVector& a,
                                 const ComplexVector& b, const LinearMap& t);

}  // namespace nicefn
