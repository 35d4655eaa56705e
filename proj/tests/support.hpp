#pragma once

#include <cmath>
#include <numbers>

#include "nicefn/nice_function.hpp"
#include "nicefn/random.hpp"

namespace nicefn::testing {

inline constexpr double kPi = std::numbers::pi;

inline ComplexVector vec(std::initializer_list<Complex> entries) {
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index j = 0;
  for (const auto& e : entries) v(j++) = e;
  return v;
}

inline RealMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline ComplexVector zeros(std::size_t dim) { return ComplexVector::Zero(static_cast<Eigen::Index>(dim)); }

// c * x^alpha * exp(-pi x.quad x + shift.x)
inline NiceTerm make_term(const MultiIndex& alpha, Complex c, const RealMatrix& quad, const ComplexVector& shift) {
  return NiceTerm(Polynomial::monomial(alpha, c), SpdForm(quad), shift);
}

inline NiceFunction single(const NiceTerm& t) { return NiceFunction(t.dim(), {t}); }

// Random evaluation point; complex when `complex_part` is set.
inline ComplexVector random_point(Rng& rng, std::size_t dim, double scale, bool complex_part) {
  ComplexVector z = random_real_vector(rng, dim, scale).cast<Complex>();
  if (complex_part) z += Complex(0.0, 1.0) * random_real_vector(rng, dim, 0.5 * scale).cast<Complex>();
  return z;
}

inline double relative_error(Complex actual, Complex expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

}  // namespace nicefn::testing
