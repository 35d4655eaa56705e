#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nicefn/nice_function.hpp"

namespace nicefn {

// Textual expression language for nice functions.
//
//   expr     := ["+"|"-"] term { ("+"|"-") term }
//   term     := factor { "*" factor }
//   factor   := number | number "i" | "i" | "pi" | "x" index ["^" integer]
//             | "exp" "(" exparg ")" | "(" expr ")" | "-" factor
//   exparg   := ["+"|"-"] component { ("+"|"-") component }
//   component:= { scalar "*" } ( matrix "[x,x]" | vector ".x" ) { "*" scalar }
//
// Matrix literals are [[a,b],[c,d]] with real entries; vector literals are
// [u,v] with complex scalar entries such as 1i or (2-3i). A component
// c*Q[x,x] means c * (x.Qx) in the exponent, so the Gaussian exp(-pi x^2) is
// written exp(-pi*[[1]][x,x]).

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

enum class NodeKind { Sum, Product, Negate, Scalar, Constant, Monomial, Exp };

struct ExpComponent {
  enum class Kind { Quadratic, Linear };
  Kind kind = Kind::Quadratic;
  Complex coefficient{1.0, 0.0};
  RealMatrix matrix;     // Quadratic
  ComplexVector vector;  // Linear
  SourceSpan span;
};

struct AstNode {
  NodeKind kind = NodeKind::Scalar;
  SourceSpan span;
  std::vector<AstNode> children;       // Sum, Product, Negate
  Complex value{};                     // Scalar, Constant
  std::string name;                    // Constant: "pi" or "i"
  std::size_t variable = 0;            // Monomial, 1-based
  int power = 1;                       // Monomial
  std::vector<ExpComponent> exponent;  // Exp
};

struct ExpressionAst {
  AstNode root;
  std::optional<std::size_t> dim;  // from matrix/vector literals, if any
  std::size_t max_variable = 0;    // largest monomial index used
};

// Throws ParseError (with line/column and the expected-token set) on syntax
// errors, DimensionMismatch when literals disagree in size.
ExpressionAst parse(std::string_view text);

// Direct evaluation of the tree at z, independent of lowering.
Complex interpret(const ExpressionAst& ast, const ComplexVector& z);

// Lowers to a canonical NiceFunction. Throws SpdError when an exp() literal's
// quadratic part is not positive-definite (e.g. a growing exponent), and
// InvalidInput when a summand has no Gaussian factor.
NiceFunction lower(const ExpressionAst& ast, std::optional<std::size_t> dim = std::nullopt);

NiceFunction parse_function(std::string_view text, std::optional<std::size_t> dim = std::nullopt);

// Complex scalar in the literal syntax, e.g. "2-3i" or "-pi*i".
Complex parse_scalar(std::string_view text);
// Comma-separated complex scalars, with or without surrounding brackets.
ComplexVector parse_complex_vector(std::string_view text);

// Pretty-printer whose output parses back to the same function; use
// precision 17 for a lossless round trip.
std::string to_expression(const NiceFunction& f, int precision = 6);

}  // namespace nicefn
