#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "nicefn/polynomial.hpp"

namespace nicefn {

/// Symmetric positive-definite quadratic form A, validated at construction by
/// a Cholesky factorization A = L L^T.
///
/// The stored matrix is exactly symmetric. Inputs that are symmetric up to
/// 1e-12 relative are symmetrized by averaging; anything further off, any
/// non-finite entry, or any pivot L_jj^2 <= 1e-12 * max_j A_jj is rejected
/// with SpdError.
class SpdForm {
 public:
  explicit SpdForm(const RealMatrix& entries);

  static SpdForm identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const RealMatrix& matrix() const noexcept { return matrix_; }
  // Lower-triangular factor L.
  const RealMatrix& factor() const noexcept { return factor_; }
  double determinant() const noexcept { return determinant_; }

  SpdForm inverse() const;
  ComplexVector solve(const ComplexVector& rhs) const;
  // x . A x with the bilinear dot, valid for complex x.
  Complex quadratic(const ComplexVector& x) const;
  // Smallest eigenvalue.
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  friend SpdForm operator+(const SpdForm& a, const SpdForm& b);

 private:
  RealMatrix matrix_;
  RealMatrix factor_;
  double determinant_ = 0.0;
};

}  // namespace nicefn
