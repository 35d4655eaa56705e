#include "nicefn/linear_map.hpp"

#include <cmath>

#include "nicefn/errors.hpp"

namespace nicefn {

LinearMap::LinearMap(const RealMatrix& entries) : matrix_(entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw DimensionMismatch("linear map must be a nonempty square matrix");
  }
  if (!entries.allFinite()) throw InvalidInput("linear map has non-finite entries");
  const Eigen::FullPivLU<RealMatrix> lu(matrix_);
  determinant_ = lu.determinant();
  const double scale = matrix_.cwiseAbs().maxCoeff();
  const double threshold = 1e-12 * std::pow(scale, static_cast<double>(matrix_.rows()));
  if (scale > 0.0 && std::abs(determinant_) >= threshold) inverse_ = lu.inverse();
}

LinearMap LinearMap::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return LinearMap(RealMatrix::Identity(n, n));
}

LinearMap LinearMap::scaling(std::size_t dim, double factor) {
  const auto n = static_cast<Eigen::Index>(dim);
  return LinearMap(factor * RealMatrix::Identity(n, n));
}

LinearMap LinearMap::transpose() const { return LinearMap(matrix_.transpose()); }

LinearMap LinearMap::inverse() const {
  if (!inverse_) throw SingularMap("linear map is singular");
  return LinearMap(*inverse_);
}

LinearMap LinearMap::inverse_transpose() const {
  if (!inverse_) throw SingularMap("linear map is singular");
  return LinearMap(inverse_->transpose());
}

ComplexVector LinearMap::apply(const ComplexVector& v) const {
  if (v.size() != matrix_.cols()) throw DimensionMismatch("linear map applied to wrong length");
  return matrix_.cast<Complex>() * v;
}

LinearMap operator*(const LinearMap& t, const LinearMap& s) {
  if (t.dim() != s.dim()) throw DimensionMismatch("composing linear maps of different dimension");
  return LinearMap(t.matrix_ * s.matrix_);
}

}  // namespace nicefn
