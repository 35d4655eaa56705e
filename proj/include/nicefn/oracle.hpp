#pragma once

#include <cstddef>

#include "nicefn/nice_function.hpp"

namespace nicefn {

// Tensor-product composite Gauss-Legendre rule on [-half_width, half_width]^dim.
// points_per_axis is rounded up to a whole number of 20-node panels.
struct QuadratureSpec {
  std::size_t dim = 1;
  double half_width = 6.0;
  int points_per_axis = 200;
};

// Largest admissible truncation tail for a spec to be accepted.
inline constexpr double kTailBoundLimit = 1e-9;

// Default points per axis by dimension (200, 120, 60); scaled up in
// proportion when the half-width has to grow beyond 6/sqrt(lambda_min).
int default_points_per_axis(std::size_t dim);

// Specs sized so that the truncation tail of the respective integrand is
// below kTailBoundLimit. Throw SpecRejected if no such box exists.
QuadratureSpec fourier_spec(const NiceFunction& f, const ComplexVector& xi);
QuadratureSpec convolution_spec(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x);
QuadratureSpec inner_product_spec(const NiceFunction& f, const NiceFunction& g);

// Upper bounds on the integrand mass outside the box.
double fourier_tail_bound(const NiceFunction& f, const ComplexVector& xi, const QuadratureSpec& spec);
double convolution_tail_bound(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x,
                              const QuadratureSpec& spec);
double inner_product_tail_bound(const NiceFunction& f, const NiceFunction& g, const QuadratureSpec& spec);

// integral f(x) exp(-2 pi i x.xi) dx by direct quadrature.
Complex quad_fourier(const NiceFunction& f, const ComplexVector& xi, const QuadratureSpec& spec);
Complex quad_fourier(const NiceFunction& f, const ComplexVector& xi);

// integral f(y) g(x - y) dy by direct quadrature; dim <= 2.
Complex quad_convolve(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x,
                      const QuadratureSpec& spec);
Complex quad_convolve(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x);

// integral f(x) conj(g(x)) dx by direct quadrature over real x.
Complex quad_inner_product(const NiceFunction& f, const NiceFunction& g, const QuadratureSpec& spec);
Complex quad_inner_product(const NiceFunction& f, const NiceFunction& g);

// integral |f(x)| dx by direct quadrature (the bound on |f^(xi)| for real xi).
Complex quad_abs_integral(const NiceFunction& f);

// Central difference (f(x + h e_axis) - f(x - h e_axis)) / 2h.
Complex finite_difference(const NiceFunction& f, std::size_t axis, const RealVector& x, double h = 1e-5);

struct Comparison {
  bool pass = false;
  double residual = 0.0;
};

// Passes iff |symbolic - numeric| <= abs_tol + rel_tol * |symbolic|.
Comparison compare(Complex symbolic, Complex numeric, double abs_tol, double rel_tol);

}  // namespace nicefn
