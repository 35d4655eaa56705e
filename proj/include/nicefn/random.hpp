#pragma once

#include <cstddef>
#include <random>

#include "nicefn/linear_map.hpp"
#include "nicefn/nice_function.hpp"

namespace nicefn {

// Generators for randomized testing and the CLI `random` command.
struct RandomFunctionOptions {
  std::size_t dim = 1;
  std::size_t max_terms = 3;
  int max_degree = 4;
  double max_shift = 2.0;     // bound on |shift| (Euclidean norm)
  double min_eigenvalue = 0.5;
  double max_condition = 4.0;
  bool complex_shift = true;
};

using Rng = std::mt19937_64;

Complex random_complex(Rng& rng, double radius);
ComplexVector random_complex_vector(Rng& rng, std::size_t dim, double max_norm);
RealVector random_real_vector(Rng& rng, std::size_t dim, double half_width);
RealMatrix random_orthogonal(Rng& rng, std::size_t dim);
// Eigenvalues drawn log-uniformly from [min_eigenvalue, min_eigenvalue * max_condition].
SpdForm random_spd(Rng& rng, std::size_t dim, double min_eigenvalue, double max_condition);
// Well-conditioned invertible map: orthogonal * diag(singular values in [0.5, 2]) * orthogonal.
LinearMap random_invertible_map(Rng& rng, std::size_t dim);
Polynomial random_polynomial(Rng& rng, std::size_t dim, int max_degree);
// A random term of exactly the given degree sum is not guaranteed; degree <= max_degree.
NiceTerm random_term(Rng& rng, const RandomFunctionOptions& options);
// 1..max_terms terms with distinct keys.
NiceFunction random_function(Rng& rng, const RandomFunctionOptions& options);

}  // namespace nicefn
