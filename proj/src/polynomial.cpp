#include "nicefn/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "nicefn/errors.hpp"

namespace nicefn {

Complex dot(const ComplexVector& z, const ComplexVector& w) {
  if (z.size() != w.size()) throw DimensionMismatch("dot product of vectors with different lengths");
  return (z.array() * w.array()).sum();
}

Polynomial Polynomial::constant(std::size_t dim, Complex value) {
  Polynomial p(dim);
  p.add_term(MultiIndex(dim), value);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, Complex coefficient) {
  Polynomial p(alpha.size());
  p.add_term(alpha, coefficient);
  return p;
}

Polynomial Polynomial::linear(const ComplexVector& coeffs, Complex constant_term) {
  const auto dim = static_cast<std::size_t>(coeffs.size());
  Polynomial p = constant(dim, constant_term);
  for (std::size_t j = 0; j < dim; ++j) p.add_term(MultiIndex::unit(dim, j), coeffs(j));
  return p;
}

int Polynomial::degree() const noexcept {
  // Graded order: the last key has the largest degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

Complex Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

double Polynomial::max_abs_coefficient() const noexcept {
  double best = 0.0;
  for (const auto& [alpha, c] : terms_) best = std::max(best, std::abs(c));
  return best;
}

double Polynomial::coefficient_mass() const noexcept {
  double mass = 0.0;
  for (const auto& [alpha, c] : terms_) mass += std::abs(c);
  return mass;
}

void Polynomial::add_term(const MultiIndex& alpha, Complex coefficient) {
  if (alpha.size() != dim_) throw DimensionMismatch("monomial length does not match polynomial dimension");
  if (coefficient == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("adding polynomials of different dimension");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("subtracting polynomials of different dimension");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(Complex scalar) {
  if (scalar == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("multiplying polynomials of different dimension");
  Polynomial out(a.dim_);
  for (const auto& [alpha, ca] : a.terms_) {
    for (const auto& [beta, cb] : b.terms_) out.add_term(alpha + beta, ca * cb);
  }
  return out;
}

Polynomial Polynomial::times_monomial(const MultiIndex& alpha) const {
  if (alpha.size() != dim_) throw DimensionMismatch("monomial length does not match polynomial dimension");
  Polynomial out(dim_);
  for (const auto& [beta, c] : terms_) out.terms_.emplace(beta + alpha, c);
  return out;
}

Polynomial Polynomial::partial(std::size_t axis) const {
  if (axis >= dim_) throw DimensionMismatch("derivative axis out of range");
  Polynomial out(dim_);
  const auto step = MultiIndex::unit(dim_, axis);
  for (const auto& [alpha, c] : terms_) {
    const int power = alpha[axis];
    if (power == 0) continue;
    out.add_term(alpha - step, c * static_cast<double>(power));
  }
  return out;
}

Polynomial Polynomial::conjugated() const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, std::conj(c));
  return out;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha.degree() == degree) out.terms_.emplace(alpha, c);
  }
  return out;
}

Polynomial Polynomial::pruned(double threshold) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (std::abs(c) >= threshold) out.terms_.emplace(alpha, c);
  }
  return out;
}

Complex Polynomial::evaluate(const ComplexVector& z) const {
  if (static_cast<std::size_t>(z.size()) != dim_) {
    throw DimensionMismatch("evaluation point has wrong dimension");
  }
  if (terms_.empty()) return {};
  const int max_power = degree();
  // powers(j, k) = z_j^k
  Eigen::MatrixXcd powers(dim_, max_power + 1);
  for (std::size_t j = 0; j < dim_; ++j) {
    powers(j, 0) = 1.0;
    for (int k = 1; k <= max_power; ++k) powers(j, k) = powers(j, k - 1) * z(j);
  }
  Complex sum{};
  for (const auto& [alpha, c] : terms_) {
    Complex m = c;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (alpha[j]) m *= powers(j, alpha[j]);
    }
    sum += m;
  }
  return sum;
}

Polynomial Polynomial::substitute_affine(const Eigen::MatrixXcd& m, const ComplexVector& c) const {
  if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(c.size()) != dim_) {
    throw DimensionMismatch("affine substitution has wrong dimension");
  }
  const auto out_dim = static_cast<std::size_t>(m.cols());
  const int max_power = degree();
  // power_table[j][k] = (row_j(M) . x + c_j)^k
  std::vector<std::vector<Polynomial>> power_table(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const Polynomial row = linear(m.row(static_cast<Eigen::Index>(j)).transpose(), c(j));
    auto& table = power_table[j];
    table.push_back(constant(out_dim, 1.0));
    for (int k = 1; k <= max_power; ++k) table.push_back(table.back() * row);
  }
  Polynomial out(out_dim);
  for (const auto& [alpha, coeff] : terms_) {
    Polynomial product = constant(out_dim, coeff);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (alpha[j]) product = product * power_table[j][alpha[j]];
    }
    out += product;
  }
  return out;
}

}  // namespace nicefn
