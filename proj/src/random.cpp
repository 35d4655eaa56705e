#include "nicefn/random.hpp"

#include <algorithm>
#include <cmath>

namespace nicefn {

Complex random_complex(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Complex c;
  do {
    c = {unit(rng), unit(rng)};
  } while (std::abs(c) > 1.0);
  return radius * c;
}

ComplexVector random_complex_vector(Rng& rng, std::size_t dim, double max_norm) {
  const auto n = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) v(j) = {normal(rng), normal(rng)};
  std::uniform_real_distribution<double> radius(0.0, max_norm);
  const double norm = v.norm();
  return norm > 0.0 ? ComplexVector(v * (radius(rng) / norm)) : v;
}

RealVector random_real_vector(Rng& rng, std::size_t dim, double half_width) {
  std::uniform_real_distribution<double> unit(-half_width, half_width);
  RealVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = unit(rng);
  return v;
}

RealMatrix random_orthogonal(Rng& rng, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> normal;
  RealMatrix g(n, n);
  for (Eigen::Index k = 0; k < g.size(); ++k) g.data()[k] = normal(rng);
  const Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

SpdForm random_spd(Rng& rng, std::size_t dim, double min_eigenvalue, double max_condition) {
  std::uniform_real_distribution<double> exponent(0.0, std::log(max_condition));
  const RealMatrix q = random_orthogonal(rng, dim);
  RealVector eig(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < eig.size(); ++j) eig(j) = min_eigenvalue * std::exp(exponent(rng));
  const RealMatrix a = q * eig.asDiagonal() * q.transpose();
  return SpdForm(0.5 * (a + a.transpose()));
}

LinearMap random_invertible_map(Rng& rng, std::size_t dim) {
  std::uniform_real_distribution<double> singular(0.5, 2.0);
  RealVector s(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < s.size(); ++j) s(j) = singular(rng);
  return LinearMap(random_orthogonal(rng, dim) * s.asDiagonal() * random_orthogonal(rng, dim));
}

Polynomial random_polynomial(Rng& rng, std::size_t dim, int max_degree) {
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::bernoulli_distribution keep(0.5);
  const int d = degree(rng);
  Polynomial p(dim);
  for (const auto& alpha : multi_indices_up_to(dim, d)) {
    if (alpha.degree() == d || keep(rng)) p.add_term(alpha, random_complex(rng, 1.0));
  }
  return p;
}

NiceTerm random_term(Rng& rng, const RandomFunctionOptions& options) {
  ComplexVector shift = random_complex_vector(rng, options.dim, options.max_shift);
  if (!options.complex_shift) shift = shift.real().cast<Complex>();
  return NiceTerm(random_polynomial(rng, options.dim, options.max_degree),
                  random_spd(rng, options.dim, options.min_eigenvalue, options.max_condition), shift);
}

NiceFunction random_function(Rng& rng, const RandomFunctionOptions& options) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, options.max_terms));
  const std::size_t terms = count(rng);
  std::vector<NiceTerm> out;
  for (std::size_t k = 0; k < terms; ++k) out.push_back(random_term(rng, options));
  return canonicalize(NiceFunction(options.dim, std::move(out)));
}

}  // namespace nicefn
