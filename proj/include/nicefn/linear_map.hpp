#pragma once

#include <cstddef>
#include <optional>

#include "nicefn/polynomial.hpp"

namespace nicefn {

// Real n x n linear map with cached determinant and, when invertible, inverse.
// A map counts as singular when |det T| < 1e-12 * (max |T_ij|)^n.
class LinearMap {
 public:
  explicit LinearMap(const RealMatrix& entries);

  static LinearMap identity(std::size_t dim);
  static LinearMap scaling(std::size_t dim, double factor);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const RealMatrix& matrix() const noexcept { return matrix_; }
  double determinant() const noexcept { return determinant_; }
  bool invertible() const noexcept { return inverse_.has_value(); }

  LinearMap transpose() const;
  // Throws SingularMap when the map is not invertible.
  LinearMap inverse() const;
  // (T^t)^{-1}, equal to (T^{-1})^t.
  LinearMap inverse_transpose() const;

  ComplexVector apply(const ComplexVector& v) const;

  // (T * S)(x) = T(S(x))
  friend LinearMap operator*(const LinearMap& t, const LinearMap& s);

 private:
  RealMatrix matrix_;
  double determinant_ = 0.0;
  std::optional<RealMatrix> inverse_;
};

}  // namespace nicefn
