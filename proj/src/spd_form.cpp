#include "nicefn/spd_form.hpp"

#include <cmath>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPivotTolerance = 1e-12;

}  // namespace

SpdForm::SpdForm(const RealMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw SpdError("quadratic form must be a nonempty square matrix");
  }
  if (!entries.allFinite()) throw SpdError("quadratic form has non-finite entries");
  const double scale = entries.cwiseAbs().maxCoeff();
  const double asymmetry = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance * scale) throw SpdError("quadratic form is not symmetric");
  matrix_ = 0.5 * (entries + entries.transpose());

  Eigen::LLT<RealMatrix> llt(matrix_);
  if (llt.info() != Eigen::Success) throw SpdError("quadratic form is not positive-definite");
  factor_ = llt.matrixL();
  const double max_diag = matrix_.diagonal().maxCoeff();
  determinant_ = 1.0;
  for (Eigen::Index j = 0; j < factor_.rows(); ++j) {
    const double pivot = factor_(j, j) * factor_(j, j);
    if (!(pivot > kPivotTolerance * max_diag)) {
      throw SpdError("quadratic form is numerically singular (pivot below tolerance)");
    }
    determinant_ *= pivot;
  }
}

SpdForm SpdForm::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return SpdForm(RealMatrix::Identity(n, n));
}

SpdForm SpdForm::inverse() const {
  const auto n = matrix_.rows();
  // Two triangular solves per column against the cached factor.
  const RealMatrix lower_inv =
      factor_.triangularView<Eigen::Lower>().solve(RealMatrix::Identity(n, n));
  return SpdForm(lower_inv.transpose() * lower_inv);
}

ComplexVector SpdForm::solve(const ComplexVector& rhs) const {
  if (rhs.size() != matrix_.rows()) throw DimensionMismatch("solve: right-hand side has wrong length");
  const Eigen::MatrixXcd l = factor_.cast<Complex>();
  const ComplexVector y = l.triangularView<Eigen::Lower>().solve(rhs);
  return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

Complex SpdForm::quadratic(const ComplexVector& x) const {
  if (x.size() != matrix_.rows()) throw DimensionMismatch("quadratic form applied to wrong length");
  const ComplexVector ax = matrix_.cast<Complex>() * x;
  return dot(x, ax);
}

double SpdForm::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double SpdForm::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

SpdForm operator+(const SpdForm& a, const SpdForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("adding quadratic forms of different dimension");
  return SpdForm(a.matrix_ + b.matrix_);
}

}  // namespace nicefn
