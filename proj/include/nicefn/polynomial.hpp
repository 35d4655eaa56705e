#pragma once

#include <complex>
#include <cstddef>
#include <map>

#include <Eigen/Dense>

#include "nicefn/multi_index.hpp"

namespace nicefn {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Bilinear dot product sum_j z_j w_j, no conjugation.
Complex dot(const ComplexVector& z, const ComplexVector& w);

// Sparse polynomial in `dim` variables with complex coefficients. Exact zero
// coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Complex, GradedLexLess>;

  explicit Polynomial(std::size_t dim) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, Complex value);
  static Polynomial monomial(const MultiIndex& alpha, Complex coefficient = 1.0);
  // sum_j coeffs_j x_j + constant_term
  static Polynomial linear(const ComplexVector& coeffs, Complex constant_term);

  std::size_t dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  // Largest degree among stored monomials; 0 for the zero polynomial.
  int degree() const noexcept;
  Complex coefficient(const MultiIndex& alpha) const;
  double max_abs_coefficient() const noexcept;
  // Sum of coefficient magnitudes.
  double coefficient_mass() const noexcept;

  void add_term(const MultiIndex& alpha, Complex coefficient);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial times_monomial(const MultiIndex& alpha) const;
  Polynomial partial(std::size_t axis) const;
  Polynomial conjugated() const;
  Polynomial homogeneous_part(int degree) const;
  // Drops coefficients with magnitude below `threshold`.
  Polynomial pruned(double threshold) const;

  Complex evaluate(const ComplexVector& z) const;

  // The polynomial x -> p(M x + c), expanded into monomials.
  Polynomial substitute_affine(const Eigen::MatrixXcd& m, const ComplexVector& c) const;

 private:
  std::size_t dim_;
  Terms terms_;
};

}  // namespace nicefn
