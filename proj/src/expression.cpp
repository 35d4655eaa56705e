#include "nicefn/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kPi = std::numbers::pi;

enum class TokenKind { Number, Imaginary, Ident, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Comma, Dot, End };

struct Token {
  TokenKind kind;
  std::string text;
  double number = 0.0;
  SourceSpan span;
};

std::string describe(const Token& t) {
  if (t.kind == TokenKind::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::End, "", 0.0, here(0)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  SourceSpan here(std::size_t length) const { return {line_, column_, pos_, length}; }

  void advance(std::size_t count) {
    for (std::size_t k = 0; k < count && pos_ < text_.size(); ++k, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }

  bool digit_at(std::size_t p) const {
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }
  bool alpha_at(std::size_t p) const {
    return p < text_.size() && std::isalpha(static_cast<unsigned char>(text_[p]));
  }

  Token next() {
    const char c = text_[pos_];
    if (digit_at(pos_) || (c == '.' && digit_at(pos_ + 1))) return number();
    if (alpha_at(pos_)) {
      std::size_t end = pos_;
      while (alpha_at(end)) ++end;
      Token t{TokenKind::Ident, std::string(text_.substr(pos_, end - pos_)), 0.0, here(end - pos_)};
      advance(end - pos_);
      return t;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case '[': kind = TokenKind::LBracket; break;
      case ']': kind = TokenKind::RBracket; break;
      case ',': kind = TokenKind::Comma; break;
      case '.': kind = TokenKind::Dot; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }
    Token t{kind, std::string(1, c), 0.0, here(1)};
    advance(1);
    return t;
  }

  Token number() {
    std::size_t end = pos_;
    while (digit_at(end)) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (digit_at(end)) ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t p = end + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (digit_at(p)) {
        while (digit_at(p)) ++p;
        end = p;
      }
    }
    const std::string_view digits = text_.substr(pos_, end - pos_);
    double value = 0.0;
    const auto result = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (result.ec != std::errc() || result.ptr != digits.data() + digits.size()) {
      throw ParseError("malformed number '" + std::string(digits) + "'", line_, column_);
    }
    TokenKind kind = TokenKind::Number;
    if (end < text_.size() && text_[end] == 'i' && !alpha_at(end + 1) && !digit_at(end + 1)) {
      kind = TokenKind::Imaginary;
      ++end;
    }
    Token t{kind, std::string(text_.substr(pos_, end - pos_)), value, here(end - pos_)};
    advance(end - pos_);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

AstNode make_node(NodeKind kind, const SourceSpan& span) {
  AstNode n;
  n.kind = kind;
  n.span = span;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  ExpressionAst run() {
    ExpressionAst ast;
    ast.root = expr();
    expect(TokenKind::End, "end of input");
    ast.dim = dim_;
    ast.max_variable = max_variable_;
    return ast;
  }

  Complex scalar_only() {
    const Complex v = scalar_expr();
    expect(TokenKind::End, "end of input");
    return v;
  }

  ComplexVector vector_only() {
    ComplexVector v = vector_literal();
    expect(TokenKind::End, "end of input");
    return v;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view name) const { return at(TokenKind::Ident) && peek().text == name; }

  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string message = "unexpected " + describe(t) + ", expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k) message += k + 1 == expected.size() ? " or " : ", ";
      message += expected[k];
    }
    throw ParseError(message, t.span.line, t.span.column, std::move(expected));
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (!at(kind)) fail({what});
    return take();
  }

  void expect_ident(std::string_view name) {
    if (!at_ident(name)) fail({"'" + std::string(name) + "'"});
    take();
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.length = b.offset + b.length - a.offset;
    return s;
  }

  void record_dim(std::size_t n, const SourceSpan& span) {
    if (dim_ && *dim_ != n) {
      throw DimensionMismatch("literal at line " + std::to_string(span.line) + ", column " +
                              std::to_string(span.column) + " has dimension " + std::to_string(n) +
                              " but an earlier literal has dimension " + std::to_string(*dim_));
    }
    dim_ = n;
  }

  AstNode expr() {
    AstNode sum = make_node(NodeKind::Sum, peek().span);
    bool negate = false;
    if (at(TokenKind::Plus) || at(TokenKind::Minus)) negate = take().kind == TokenKind::Minus;
    while (true) {
      AstNode t = term();
      if (negate) {
        AstNode n = make_node(NodeKind::Negate, t.span);
        n.children.push_back(std::move(t));
        t = std::move(n);
      }
      sum.children.push_back(std::move(t));
      if (!at(TokenKind::Plus) && !at(TokenKind::Minus)) break;
      negate = take().kind == TokenKind::Minus;
    }
    if (sum.children.size() == 1 && sum.children.front().kind != NodeKind::Negate) {
      return std::move(sum.children.front());
    }
    sum.span = join(sum.span, sum.children.back().span);
    return sum;
  }

  AstNode term() {
    AstNode first = factor();
    if (!at(TokenKind::Star)) return first;
    AstNode product = make_node(NodeKind::Product, first.span);
    product.children.push_back(std::move(first));
    while (at(TokenKind::Star)) {
      take();
      product.children.push_back(factor());
    }
    product.span = join(product.span, product.children.back().span);
    return product;
  }

  AstNode factor() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::Imaginary: {
        AstNode n = make_node(NodeKind::Scalar, t.span);
        n.value = t.kind == TokenKind::Number ? Complex(t.number, 0.0) : Complex(0.0, t.number);
        take();
        return n;
      }
      case TokenKind::Minus: {
        AstNode n = make_node(NodeKind::Negate, take().span);
        n.children.push_back(factor());
        n.span = join(n.span, n.children.back().span);
        return n;
      }
      case TokenKind::LParen: {
        take();
        AstNode inner = expr();
        expect(TokenKind::RParen, "')'");
        return inner;
      }
      case TokenKind::Ident:
        if (t.text == "i" || t.text == "pi") {
          AstNode n = make_node(NodeKind::Constant, t.span);
          n.name = t.text;
          n.value = t.text == "i" ? Complex(0.0, 1.0) : Complex(kPi, 0.0);
          take();
          return n;
        }
        if (t.text == "x") return monomial();
        if (t.text == "exp") return exponential();
        break;
      default:
        break;
    }
    fail({"number", "'i'", "'pi'", "'x'", "'exp'", "'('", "'-'"});
  }

  int integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      fail({what});
    }
    take();
    if (t.number > 1e6) throw ParseError(what + " is too large", t.span.line, t.span.column);
    return static_cast<int>(t.number);
  }

  AstNode monomial() {
    AstNode n = make_node(NodeKind::Monomial, take().span);
    const SourceSpan index_span = peek().span;
    const int index = integer("variable index");
    if (index < 1) throw ParseError("variable indices start at 1", index_span.line, index_span.column);
    n.variable = static_cast<std::size_t>(index);
    max_variable_ = std::max(max_variable_, n.variable);
    SourceSpan last = index_span;
    if (at(TokenKind::Caret)) {
      take();
      last = peek().span;
      n.power = integer("integer exponent");
    }
    n.span = join(n.span, last);
    return n;
  }

  AstNode exponential() {
    AstNode n = make_node(NodeKind::Exp, take().span);
    expect(TokenKind::LParen, "'('");
    Complex sign = 1.0;
    if (at(TokenKind::Plus) || at(TokenKind::Minus)) sign = take().kind == TokenKind::Minus ? -1.0 : 1.0;
    while (true) {
      n.exponent.push_back(component(sign));
      if (!at(TokenKind::Plus) && !at(TokenKind::Minus)) break;
      sign = take().kind == TokenKind::Minus ? -1.0 : 1.0;
    }
    n.span = join(n.span, expect(TokenKind::RParen, "')'").span);
    return n;
  }

  ExpComponent component(Complex sign) {
    ExpComponent c;
    c.coefficient = sign;
    c.span = peek().span;
    while (!at(TokenKind::LBracket)) {
      c.coefficient *= scalar_factor();
      expect(TokenKind::Star, "'*'");
    }
    if (peek(1).kind == TokenKind::LBracket) {
      c.kind = ExpComponent::Kind::Quadratic;
      c.matrix = matrix_literal();
      expect(TokenKind::LBracket, "'['");
      expect_ident("x");
      expect(TokenKind::Comma, "','");
      expect_ident("x");
      c.span = join(c.span, expect(TokenKind::RBracket, "']'").span);
    } else {
      c.kind = ExpComponent::Kind::Linear;
      c.vector = vector_literal();
      expect(TokenKind::Dot, "'.'");
      c.span = join(c.span, peek().span);
      expect_ident("x");
    }
    while (at(TokenKind::Star)) {
      take();
      c.coefficient *= scalar_factor();
    }
    return c;
  }

  RealMatrix matrix_literal() {
    const SourceSpan start = expect(TokenKind::LBracket, "'['").span;
    std::vector<std::vector<double>> rows;
    do {
      if (!rows.empty()) take();
      expect(TokenKind::LBracket, "'['");
      std::vector<double> row;
      do {
        if (!row.empty()) take();
        const SourceSpan entry = peek().span;
        const Complex v = scalar_expr();
        if (v.imag() != 0.0) throw ParseError("matrix entries must be real", entry.line, entry.column);
        row.push_back(v.real());
      } while (at(TokenKind::Comma));
      expect(TokenKind::RBracket, "']'");
      rows.push_back(std::move(row));
    } while (at(TokenKind::Comma));
    expect(TokenKind::RBracket, "']'");
    const std::size_t n = rows.size();
    for (const auto& row : rows) {
      if (row.size() != n) throw ParseError("matrix literal must be square", start.line, start.column);
    }
    record_dim(n, start);
    RealMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r][k];
    }
    return m;
  }

  ComplexVector vector_literal() {
    const SourceSpan start = expect(TokenKind::LBracket, "'['").span;
    std::vector<Complex> entries;
    do {
      if (!entries.empty()) take();
      entries.push_back(scalar_expr());
    } while (at(TokenKind::Comma));
    expect(TokenKind::RBracket, "']'");
    record_dim(entries.size(), start);
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t j = 0; j < entries.size(); ++j) v(static_cast<Eigen::Index>(j)) = entries[j];
    return v;
  }

  Complex scalar_expr() {
    Complex sign = 1.0;
    if (at(TokenKind::Plus) || at(TokenKind::Minus)) sign = take().kind == TokenKind::Minus ? -1.0 : 1.0;
    Complex total = sign * scalar_term();
    while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
      const bool minus = take().kind == TokenKind::Minus;
      const Complex t = scalar_term();
      total = minus ? total - t : total + t;
    }
    return total;
  }

  Complex scalar_term() {
    Complex v = scalar_factor();
    while (at(TokenKind::Star)) {
      take();
      v *= scalar_factor();
    }
    return v;
  }

  Complex scalar_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number: take(); return {t.number, 0.0};
      case TokenKind::Imaginary: take(); return {0.0, t.number};
      case TokenKind::Minus: take(); return -scalar_factor();
      case TokenKind::LParen: {
        take();
        const Complex v = scalar_expr();
        expect(TokenKind::RParen, "')'");
        return v;
      }
      case TokenKind::Ident:
        if (t.text == "pi") {
          take();
          return {kPi, 0.0};
        }
        if (t.text == "i") {
          take();
          return {0.0, 1.0};
        }
        break;
      default:
        break;
    }
    fail({"number", "'i'", "'pi'", "'('", "'['"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> dim_;
  std::size_t max_variable_ = 0;
};

Complex interpret_node(const AstNode& node, const ComplexVector& z) {
  switch (node.kind) {
    case NodeKind::Sum: {
      Complex sum{};
      for (const auto& c : node.children) sum += interpret_node(c, z);
      return sum;
    }
    case NodeKind::Product: {
      Complex product = 1.0;
      for (const auto& c : node.children) product *= interpret_node(c, z);
      return product;
    }
    case NodeKind::Negate: return -interpret_node(node.children.front(), z);
    case NodeKind::Scalar:
    case NodeKind::Constant: return node.value;
    case NodeKind::Monomial: {
      if (node.variable > static_cast<std::size_t>(z.size())) throw DimensionMismatch("variable index exceeds dimension");
      return std::pow(z(static_cast<Eigen::Index>(node.variable - 1)), node.power);
    }
    case NodeKind::Exp: {
      Complex exponent{};
      for (const auto& c : node.exponent) {
        if (c.kind == ExpComponent::Kind::Quadratic) {
          exponent += c.coefficient * dot(z, c.matrix.cast<Complex>() * z);
        } else {
          exponent += c.coefficient * dot(c.vector, z);
        }
      }
      return std::exp(exponent);
    }
  }
  return {};
}

// Intermediate lowering value: poly * exp(-pi x.quad x + shift.x), where the
// exponential part may be absent for purely polynomial factors.
struct Piece {
  Polynomial poly;
  bool has_exp;
  RealMatrix quad;
  ComplexVector shift;
};

using Pieces = std::vector<Piece>;

void merge_into(Pieces& pieces, Piece p) {
  for (auto& q : pieces) {
    if (q.has_exp == p.has_exp && q.quad == p.quad && q.shift == p.shift) {
      q.poly += p.poly;
      return;
    }
  }
  pieces.push_back(std::move(p));
}

class Lowering {
 public:
  explicit Lowering(std::size_t dim) : dim_(dim) {}

  Pieces run(const AstNode& node) {
    switch (node.kind) {
      case NodeKind::Sum: {
        Pieces out;
        for (const auto& c : node.children) {
          for (auto& p : run(c)) merge_into(out, std::move(p));
        }
        return out;
      }
      case NodeKind::Product: {
        Pieces acc = {plain(Polynomial::constant(dim_, 1.0))};
        for (const auto& c : node.children) {
          const Pieces rhs = run(c);
          Pieces next;
          for (const auto& a : acc) {
            for (const auto& b : rhs) {
              merge_into(next, Piece{a.poly * b.poly, a.has_exp || b.has_exp, a.quad + b.quad, a.shift + b.shift});
            }
          }
          acc = std::move(next);
        }
        return acc;
      }
      case NodeKind::Negate: {
        Pieces out = run(node.children.front());
        for (auto& p : out) p.poly *= -1.0;
        return out;
      }
      case NodeKind::Scalar:
      case NodeKind::Constant: return {plain(Polynomial::constant(dim_, node.value))};
      case NodeKind::Monomial: {
        if (node.variable > dim_) {
          throw DimensionMismatch("x" + std::to_string(node.variable) + " at line " + std::to_string(node.span.line) +
                                  ", column " + std::to_string(node.span.column) + " exceeds dimension " +
                                  std::to_string(dim_));
        }
        MultiIndex alpha = MultiIndex::unit(dim_, node.variable - 1);
        std::vector<int> entries(alpha.entries().begin(), alpha.entries().end());
        entries[node.variable - 1] = node.power;
        return {plain(Polynomial::monomial(MultiIndex(std::move(entries))))};
      }
      case NodeKind::Exp: return {exponential(node)};
    }
    return {};
  }

 private:
  Piece plain(Polynomial poly) const {
    const auto n = static_cast<Eigen::Index>(dim_);
    return {std::move(poly), false, RealMatrix::Zero(n, n), ComplexVector::Zero(n)};
  }

  Piece exponential(const AstNode& node) const {
    Piece p = plain(Polynomial::constant(dim_, 1.0));
    p.has_exp = true;
    bool has_quadratic = false;
    for (const auto& c : node.exponent) {
      if (c.kind == ExpComponent::Kind::Quadratic) {
        if (c.coefficient.imag() != 0.0) {
          throw InvalidInput("complex coefficients on a quadratic form are not supported (line " +
                             std::to_string(c.span.line) + ", column " + std::to_string(c.span.column) + ")");
        }
        // c * x.Mx = -pi * x.(-c/pi M)x
        p.quad += (-c.coefficient.real() / kPi) * c.matrix;
        has_quadratic = true;
      } else {
        p.shift += c.coefficient * c.vector;
      }
    }
    if (has_quadratic) {
      try {
        SpdForm check(p.quad);
      } catch (const SpdError& e) {
        throw SpdError(std::string(e.what()) + " in exp() at line " + std::to_string(node.span.line) + ", column " +
                       std::to_string(node.span.column));
      }
    }
    return p;
  }

  std::size_t dim_;
};

std::string format_number(double value, int precision) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value + 0.0);  // no "-0"
  return buffer;
}

std::string format_complex(Complex c, int precision) {
  std::string out = "(" + format_number(c.real(), precision);
  out += c.imag() < 0.0 ? "-" + format_number(-c.imag(), precision) : "+" + format_number(c.imag(), precision);
  return out + "i)";
}

}  // namespace

ExpressionAst parse(std::string_view text) { return Parser(text).run(); }

Complex interpret(const ExpressionAst& ast, const ComplexVector& z) { return interpret_node(ast.root, z); }

NiceFunction lower(const ExpressionAst& ast, std::optional<std::size_t> dim) {
  if (ast.dim && dim && *ast.dim != *dim) {
    throw DimensionMismatch("expression literals have dimension " + std::to_string(*ast.dim) +
                            " but dimension " + std::to_string(*dim) + " was requested");
  }
  const std::optional<std::size_t> n = ast.dim ? ast.dim : dim;
  if (!n || *n == 0) throw InvalidInput("cannot infer the dimension of an expression without literals");

  std::vector<NiceTerm> terms;
  for (auto& piece : Lowering(*n).run(ast.root)) {
    if (piece.poly.empty()) continue;
    if (!piece.has_exp) throw InvalidInput("a summand has no exp() factor, so it is not a nice function");
    terms.emplace_back(std::move(piece.poly), SpdForm(piece.quad), std::move(piece.shift));
  }
  return canonicalize(NiceFunction(*n, std::move(terms)));
}

NiceFunction parse_function(std::string_view text, std::optional<std::size_t> dim) {
  return lower(parse(text), dim);
}

Complex parse_scalar(std::string_view text) { return Parser(text).scalar_only(); }

ComplexVector parse_complex_vector(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') return Parser(text).vector_only();
  return Parser("[" + std::string(text) + "]").vector_only();
}

std::string to_expression(const NiceFunction& f, int precision) {
  if (f.empty()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(";
    bool first = true;
    for (const auto& [alpha, c] : t.poly.terms()) {
      if (!first) out += " + ";
      first = false;
      out += format_complex(c, precision);
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        out += "*x" + std::to_string(j + 1);
        if (alpha[j] > 1) out += "^" + std::to_string(alpha[j]);
      }
    }
    out += ")*exp(-pi*[";
    const auto& m = t.quad.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r) out += ",";
      out += "[";
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        if (k) out += ",";
        out += format_number(m(r, k), precision);
      }
      out += "]";
    }
    out += "][x,x]";
    if (!t.shift.isZero(0.0)) {
      out += " + [";
      for (Eigen::Index j = 0; j < t.shift.size(); ++j) {
        if (j) out += ",";
        out += format_complex(t.shift(j), precision);
      }
      out += "].x";
    }
    out += ")";
  }
  return out;
}

}  // namespace nicefn
