#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nicefn/errors.hpp"
#include "nicefn/expression.hpp"
#include "nicefn/random.hpp"
#include "support.hpp"

namespace nicefn {
namespace {

using testing::kPi;
using testing::mat;
using testing::random_point;
using testing::relative_error;
using testing::vec;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_literal(Complex c) {
  return "(" + num(c.real()) + (c.imag() < 0 ? "-" : "+") + num(std::abs(c.imag())) + "i)";
}

std::string matrix_literal(const RealMatrix& m) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    s += r ? ",[" : "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) s += (c ? "," : "") + num(m(r, c));
    s += "]";
  }
  return s + "]";
}

std::string vector_literal(const ComplexVector& v) {
  std::string s = "[";
  for (Eigen::Index j = 0; j < v.size(); ++j) s += (j ? "," : "") + complex_literal(v(j));
  return s + "]";
}

// Random well-formed expression in `dim` variables, mixing the grammar's forms.
std::string random_expression(Rng& rng, std::size_t dim) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::ostringstream out;
  const int summands = 1 + pick(rng) % 3;
  for (int s = 0; s < summands; ++s) {
    if (s) out << (pick(rng) % 2 ? " + " : " - ");
    const int shape = pick(rng);
    out << complex_literal(random_complex(rng, 2.0));
    for (std::size_t j = 0; j < dim; ++j) {
      const int power = pick(rng);
      if (power == 0) continue;
      out << "*x" << (j + 1);
      if (power > 1) out << "^" << power;
    }
    if (shape == 1) out << "*(1 + x1)";
    if (shape == 2) out << "*pi*i";
    const SpdForm q = random_spd(rng, dim, 0.5, 4.0);
    out << "*exp(-pi*" << matrix_literal(q.matrix()) << "[x,x]";
    if (shape != 3) out << " + " << vector_literal(random_complex_vector(rng, dim, 1.5)) << ".x";
    out << ")";
  }
  return out.str();
}

void expect_lowering_matches_interpreter(const std::string& text, Rng& rng) {
  const ExpressionAst ast = parse(text);
  const NiceFunction f = lower(ast);
  for (int k = 0; k < 10; ++k) {
    const ComplexVector z = random_point(rng, f.dim(), 1.0, true);
    EXPECT_LT(relative_error(f.evaluate(z), interpret(ast, z)), 1e-10) << text;
  }
}

TEST(Parse, StandardGaussian) {
  const NiceFunction f = parse_function("exp(-pi*[[1]][x,x])");
  EXPECT_EQ(f.dim(), 1u);
  EXPECT_EQ(coefficient_distance(f, NiceFunction::standard_gaussian(1)), 0.0);
}

TEST(Parse, ComplexCoefficientAndShift) {
  const std::string text = "(2+3i)*x1^2*exp(-pi*[[2,0],[0,1]][x,x] + [1i,0].x)";
  const NiceFunction f = parse_function(text);
  ASSERT_EQ(f.dim(), 2u);
  ASSERT_EQ(f.terms().size(), 1u);
  const NiceTerm& t = f.terms()[0];
  EXPECT_EQ(t.poly.size(), 1u);
  EXPECT_EQ(t.poly.coefficient({2, 0}), Complex(2.0, 3.0));
  EXPECT_EQ(t.shift(0), Complex(0.0, 1.0));
  EXPECT_EQ(t.shift(1), Complex(0.0, 0.0));
  EXPECT_EQ(t.quad.matrix(), mat({{2.0, 0.0}, {0.0, 1.0}}));
  Rng rng(401);
  expect_lowering_matches_interpreter(text, rng);
}

TEST(Parse, GrowingExponentIsRejected) {
  EXPECT_THROW(parse_function("exp(pi*[[1]][x,x])"), SpdError);
  EXPECT_THROW(parse_function("exp(-pi*[[1,2],[2,1]][x,x])"), SpdError);
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse("exp(-pi*[[1]][x,x]");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 19u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse("x1 *\n  * exp(-pi*[[1]][x,x])");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse("x0*exp(-pi*[[1]][x,x])"), ParseError);
  EXPECT_THROW(parse("3 $ 4"), ParseError);
  EXPECT_THROW(parse("exp(-pi*[[1,0]][x,x])"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Parse, MismatchedLiteralDimensions) {
  EXPECT_THROW(parse("exp(-pi*[[1,0],[0,1]][x,x] + [1].x)"), DimensionMismatch);
  EXPECT_THROW(parse_function("x3*exp(-pi*[[1,0],[0,1]][x,x])"), DimensionMismatch);
}

TEST(Lower, SummandWithoutGaussianIsInvalid) {
  EXPECT_THROW(parse_function("x1 + exp(-pi*[[1]][x,x])"), InvalidInput);
}

TEST(Lower, IdenticalSummandsMerge) {
  const NiceFunction f = parse_function("x1*exp(-pi*[[1]][x,x]) + x1*exp(-pi*[[1]][x,x])");
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].poly.coefficient({1}), Complex(2.0));
}

TEST(Lower, DistributesMonomialOverSum) {
  const NiceFunction a = parse_function("x1*(exp(-pi*[[1]][x,x]) + 2*exp(-pi*[[2]][x,x] + [1].x))");
  const NiceFunction b = parse_function("x1*exp(-pi*[[1]][x,x]) + 2*x1*exp(-pi*[[2]][x,x] + [1].x)");
  EXPECT_EQ(coefficient_distance(a, b), 0.0);
}

TEST(Lower, ProductOfExponentialsAddsForms) {
  const NiceFunction f = parse_function("exp(-pi*[[1]][x,x])*exp(-2*pi*[[0.5]][x,x] + [3].x)");
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_DOUBLE_EQ(f.terms()[0].quad.matrix()(0, 0), 2.0);
  EXPECT_EQ(f.terms()[0].shift(0), Complex(3.0));
}

TEST(Lower, ExplicitDimensionPadsOneDimensionalMonomials) {
  const NiceFunction f = parse_function("x1*x2*exp(-pi*[[1,0],[0,1]][x,x])", 2);
  EXPECT_EQ(f.dim(), 2u);
  EXPECT_THROW(parse_function("exp(-pi*[[1,0],[0,1]][x,x])", 3), DimensionMismatch);
}

TEST(Interpret, AgreesWithLoweringOnRandomCorpus) {
  Rng rng(409);
  for (int trial = 0; trial < 30; ++trial) {
    const std::string text = random_expression(rng, 1 + trial % 3);
    expect_lowering_matches_interpreter(text, rng);
  }
}

TEST(Printer, RoundTripIsExactAtFullPrecision) {
  Rng rng(419);
  for (int trial = 0; trial < 30; ++trial) {
    const NiceFunction f = parse_function(random_expression(rng, 1 + trial % 3));
    const std::string printed = to_expression(f, 17);
    const NiceFunction back = parse_function(printed);
    EXPECT_LE(coefficient_distance(back, f), 1e-12) << printed;
    EXPECT_EQ(to_expression(back, 17), printed);
  }
}

TEST(Printer, RandomFunctionsRoundTrip) {
  Rng rng(421);
  for (int trial = 0; trial < 20; ++trial) {
    RandomFunctionOptions o;
    o.dim = 1 + trial % 3;
    const NiceFunction f = random_function(rng, o);
    EXPECT_LE(coefficient_distance(parse_function(to_expression(f, 17)), f), 1e-12);
  }
}

TEST(Printer, EmptyFunctionAndShortForm) {
  EXPECT_EQ(to_expression(NiceFunction(1)), "0");
  const std::string g = to_expression(NiceFunction::standard_gaussian(1));
  EXPECT_EQ(coefficient_distance(parse_function(g), NiceFunction::standard_gaussian(1)), 0.0);
}

TEST(Fuzz, MutatedInputsFailCleanly) {
  Rng rng(431);
  const std::string alphabet = "x1^*+-()[],.iepx0123456789 ";
  std::uniform_int_distribution<std::size_t> char_pick(0, alphabet.size() - 1);
  int accepted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::string text = random_expression(rng, 1 + trial % 2);
    std::uniform_int_distribution<int> edits(1, 3);
    for (int e = edits(rng); e > 0; --e) {
      std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
      const std::size_t p = pos(rng);
      switch (trial % 3) {
        case 0: text.erase(p, 1); break;
        case 1: text.insert(p, 1, alphabet[char_pick(rng)]); break;
        default: text[p] = alphabet[char_pick(rng)]; break;
      }
    }
    try {
      const ExpressionAst ast = parse(text);
      const NiceFunction f = lower(ast);
      ++accepted;
      EXPECT_LE(coefficient_distance(parse_function(to_expression(f, 17)), f), 1e-12) << text;
    } catch (const Error&) {
      // every rejection must come through the library's error hierarchy
    }
  }
  EXPECT_GT(accepted, 0);
}

TEST(Scalars, LiteralForms) {
  EXPECT_EQ(parse_scalar("2-3i"), Complex(2.0, -3.0));
  EXPECT_EQ(parse_scalar("1i"), Complex(0.0, 1.0));
  EXPECT_EQ(parse_scalar("i"), Complex(0.0, 1.0));
  EXPECT_NEAR(parse_scalar("-pi*i").imag(), -kPi, 1e-15);
  const ComplexVector v = parse_complex_vector("[1, 2i, (3-1i)]");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v(2), Complex(3.0, -1.0));
  EXPECT_EQ(parse_complex_vector("0.5,1").size(), 2);
  EXPECT_THROW(parse_scalar("2 +"), ParseError);
}

}  // namespace
}  // namespace nicefn
