#include <gtest/gtest.h>

#include <cmath>

#include "nicefn/basis.hpp"
#include "nicefn/oracle.hpp"
#include "nicefn/random.hpp"
#include "support.hpp"

namespace nicefn {
namespace {

using testing::kPi;
using testing::make_term;
using testing::mat;
using testing::random_point;
using testing::single;
using testing::vec;
using testing::zeros;

DerivativeBasisElement element(const MultiIndex& order, const RealMatrix& quad, const ComplexVector& shift) {
  return DerivativeBasisElement{order, SpdForm(quad), shift};
}

TEST(ExpandDerivativeElement, ZeroOrderIsTheExponential) {
  const auto e = element({0, 0}, mat({{2.0, 0.3}, {0.3, 1.0}}), vec({Complex(0.1, 0.2), -0.4}));
  const NiceFunction expected = single(NiceTerm(Polynomial::constant(2, 1.0), e.quad, e.shift));
  EXPECT_EQ(coefficient_distance(expand_derivative_element(e), expected), 0.0);
}

TEST(ExpandDerivativeElement, FirstAndSecondOrderInOneDimension) {
  const NiceFunction d1 = expand_derivative_element(element({1}, mat({{1.0}}), zeros(1)));
  const NiceFunction expected1 = single(make_term({1}, -2.0 * kPi, mat({{1.0}}), zeros(1)));
  EXPECT_LE(coefficient_distance(d1, expected1), 1e-15);

  const NiceFunction d2 = expand_derivative_element(element({2}, mat({{1.0}}), zeros(1)));
  Polynomial p(1);
  p.add_term({2}, 4.0 * kPi * kPi);
  p.add_term({0}, -2.0 * kPi);
  const NiceFunction expected2 = single(NiceTerm(p, SpdForm(mat({{1.0}})), zeros(1)));
  EXPECT_LE(coefficient_distance(d2, expected2), 1e-13);

  // finite differences of the first derivative reproduce the second
  for (double x : {-0.7, 0.0, 0.4, 1.1}) {
    RealVector p0(1);
    p0 << x;
    const Complex fd = finite_difference(d1, 0, p0);
    const Complex sym = d2.evaluate(vec({x}));
    EXPECT_LE(std::abs(fd - sym), 1e-6 * std::max(1.0, std::abs(sym)));
  }
}

TEST(ToDerivativeBasis, GaussianAndFirstMoment) {
  const DerivativeExpansion g = to_derivative_basis(make_term({0}, 1.0, mat({{1.0}}), zeros(1)));
  ASSERT_EQ(g.coeffs.size(), 1u);
  EXPECT_EQ(g.coeffs.begin()->first, MultiIndex({0}));
  EXPECT_LT(std::abs(g.coeffs.begin()->second - 1.0), 1e-15);

  const DerivativeExpansion x = to_derivative_basis(make_term({1}, 1.0, mat({{1.0}}), zeros(1)));
  ASSERT_EQ(x.coeffs.size(), 1u);
  EXPECT_EQ(x.coeffs.begin()->first, MultiIndex({1}));
  EXPECT_LT(std::abs(x.coeffs.begin()->second + 1.0 / (2.0 * kPi)), 1e-15);
}

TEST(ToDerivativeBasis, RoundTripOnRandomTerms) {
  Rng rng(211);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      RandomFunctionOptions o;
      o.dim = n;
      o.max_degree = n == 3 ? 4 : 5;
      const NiceTerm t = random_term(rng, o);
      const NiceFunction original = NiceFunction::from_term(t);
      EXPECT_LE(coefficient_distance(expand(to_derivative_basis(t)), original), 1e-9) << "n=" << n;
    }
  }
}

TEST(ToDerivativeBasis, ReverseRoundTrip) {
  Rng rng(223);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 2;
    DerivativeExpansion e{{}, random_spd(rng, n, 0.5, 4.0), random_complex_vector(rng, n, 2.0)};
    for (const auto& beta : multi_indices_up_to(n, 4)) e.coeffs[beta] = random_complex(rng, 1.0);
    const NiceFunction f = expand(e);
    ASSERT_EQ(f.terms().size(), 1u);
    const DerivativeExpansion back = to_derivative_basis(f.terms()[0]);
    double worst = 0.0;
    for (const auto& [beta, c] : e.coeffs) {
      const auto it = back.coeffs.find(beta);
      worst = std::max(worst, std::abs((it == back.coeffs.end() ? Complex{} : it->second) - c));
    }
    EXPECT_LE(worst, 1e-9);
    EXPECT_EQ(back.coeffs.size(), e.coeffs.size());
  }
}

TEST(ToDerivativeBasis, DegreeCorrespondence) {
  Rng rng(227);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const SpdForm q = random_spd(rng, n, 0.5, 4.0);
    const ComplexVector b = random_complex_vector(rng, n, 2.0);
    for (const auto& alpha : multi_indices_of_degree(n, 1 + trial % 4)) {
      const DerivativeExpansion e = to_derivative_basis(NiceTerm(Polynomial::monomial(alpha, 1.0), q, b));
      int top = -1;
      for (const auto& [beta, c] : e.coeffs) top = std::max(top, beta.degree());
      EXPECT_EQ(top, alpha.degree());
      Complex top_alpha{};
      if (auto it = e.coeffs.find(alpha); it != e.coeffs.end()) top_alpha = it->second;
      EXPECT_GT(std::abs(top_alpha), 0.0);
    }
  }
}

TEST(ToDerivativeBasis, LinearInThePolynomial) {
  Rng rng(229);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const SpdForm q = random_spd(rng, n, 0.5, 4.0);
    const ComplexVector b = random_complex_vector(rng, n, 2.0);
    const Polynomial p1 = random_polynomial(rng, n, 3);
    const Polynomial p2 = random_polynomial(rng, n, 3);
    Polynomial sum = p1;
    sum += p2;
    const DerivativeExpansion e1 = to_derivative_basis(NiceTerm(p1, q, b));
    const DerivativeExpansion e2 = to_derivative_basis(NiceTerm(p2, q, b));
    const DerivativeExpansion es = to_derivative_basis(NiceTerm(sum, q, b));
    for (const auto& beta : multi_indices_up_to(n, 3)) {
      auto get = [&](const DerivativeExpansion& e) {
        const auto it = e.coeffs.find(beta);
        return it == e.coeffs.end() ? Complex{} : it->second;
      };
      EXPECT_LE(std::abs(get(es) - get(e1) - get(e2)), 1e-10);
    }
  }
}

TEST(FunctionToDerivativeBasis, EmptyAndDistinctKeys) {
  EXPECT_TRUE(function_to_derivative_basis(NiceFunction(2)).empty());
  const NiceFunction f(1, {make_term({0}, 2.0, mat({{1.0}}), zeros(1)), make_term({0}, 3.0, mat({{2.0}}), zeros(1))});
  const auto expansions = function_to_derivative_basis(canonicalize(f));
  ASSERT_EQ(expansions.size(), 2u);
  for (const auto& e : expansions) {
    ASSERT_EQ(e.coeffs.size(), 1u);
    EXPECT_EQ(e.coeffs.begin()->first, MultiIndex({0}));
  }
}

TEST(FunctionToDerivativeBasis, TermwiseRoundTrip) {
  Rng rng(233);
  for (int trial = 0; trial < 10; ++trial) {
    RandomFunctionOptions o;
    o.dim = 1 + trial % 3;
    const NiceFunction f = random_function(rng, o);
    NiceFunction back(f.dim());
    for (const auto& e : function_to_derivative_basis(f)) back = back + expand(e);
    EXPECT_LE(coefficient_distance(back, f), 1e-9);
    for (int k = 0; k < 5; ++k) {
      const ComplexVector z = random_point(rng, f.dim(), 1.0, false);
      EXPECT_LE(std::abs(back.evaluate(z) - f.evaluate(z)), 1e-9 * std::max(1.0, std::abs(f.evaluate(z))));
    }
  }
}

}  // namespace
}  // namespace nicefn
