#include "nicefn/json_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

using nlohmann::json;

void write_complex(std::string& out, Complex c) {
  out += "{\"re\":" + format_double(c.real()) + ",\"im\":" + format_double(c.imag()) + "}";
}

void write_alpha(std::string& out, const MultiIndex& alpha) {
  out += "[";
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(alpha[j]);
  }
  out += "]";
}

void write_quad(std::string& out, const SpdForm& quad) {
  const auto& m = quad.matrix();
  out += "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += format_double(m(r, c));
    }
    out += "]";
  }
  out += "]";
}

void write_shift(std::string& out, const ComplexVector& shift) {
  out += "[";
  for (Eigen::Index j = 0; j < shift.size(); ++j) {
    if (j) out += ",";
    write_complex(out, shift(j));
  }
  out += "]";
}

void write_function_body(std::string& out, const NiceFunction& f) {
  out += "\"dim\":" + std::to_string(f.dim()) + ",\"terms\":[";
  bool first_term = true;
  for (const auto& t : f.terms()) {
    if (!first_term) out += ",";
    first_term = false;
    out += "{\"poly\":[";
    bool first = true;
    for (const auto& [alpha, c] : t.poly.terms()) {
      if (!first) out += ",";
      first = false;
      out += "{\"alpha\":";
      write_alpha(out, alpha);
      out += ",\"re\":" + format_double(c.real()) + ",\"im\":" + format_double(c.imag()) + "}";
    }
    out += "],\"quad\":";
    write_quad(out, t.quad);
    out += ",\"shift\":";
    write_shift(out, t.shift);
    out += "}";
  }
  out += "]";
}

void write_expansion(std::string& out, const DerivativeExpansion& e) {
  out += "{\"quad\":";
  write_quad(out, e.quad);
  out += ",\"shift\":";
  write_shift(out, e.shift);
  out += ",\"coeffs\":[";
  bool first = true;
  for (const auto& [beta, c] : e.coeffs) {
    if (!first) out += ",";
    first = false;
    out += "{\"beta\":";
    write_alpha(out, beta);
    out += ",\"re\":" + format_double(c.real()) + ",\"im\":" + format_double(c.imag()) + "}";
  }
  out += "]}";
}

const json& member(const json& object, const char* key) {
  if (!object.is_object()) throw InvalidInput(std::string("expected a JSON object holding \"") + key + "\"");
  auto it = object.find(key);
  if (it == object.end()) throw InvalidInput(std::string("missing member \"") + key + "\"");
  return *it;
}

double number(const json& value, const char* what) {
  if (!value.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return value.get<double>();
}

Complex complex_value(const json& object) {
  return {number(member(object, "re"), "re"), number(member(object, "im"), "im")};
}

MultiIndex multi_index(const json& array, std::size_t dim, const char* what) {
  if (!array.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  if (array.size() != dim) throw DimensionMismatch(std::string(what) + " has wrong length");
  std::vector<int> entries;
  for (const auto& e : array) {
    if (!e.is_number_integer() || e.get<long long>() < 0) {
      throw InvalidInput(std::string(what) + " entries must be nonnegative integers");
    }
    entries.push_back(e.get<int>());
  }
  return MultiIndex(std::move(entries));
}

SpdForm quad_value(const json& rows, std::size_t dim) {
  if (!rows.is_array() || rows.size() != dim) throw DimensionMismatch("quad must have dim rows");
  const auto n = static_cast<Eigen::Index>(dim);
  RealMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != dim) throw DimensionMismatch("quad rows must have dim entries");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], "quad entry");
  }
  return SpdForm(m);
}

ComplexVector shift_value(const json& array, std::size_t dim) {
  if (!array.is_array() || array.size() != dim) throw DimensionMismatch("shift must have dim entries");
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) v(static_cast<Eigen::Index>(j)) = complex_value(array[j]);
  return v;
}

NiceFunction function_value(const json& doc) {
  const json& dim_value = member(doc, "dim");
  if (!dim_value.is_number_integer() || dim_value.get<long long>() <= 0) {
    throw InvalidInput("dim must be a positive integer");
  }
  const auto dim = dim_value.get<std::size_t>();
  const json& terms = member(doc, "terms");
  if (!terms.is_array()) throw InvalidInput("terms must be an array");
  std::vector<NiceTerm> out;
  for (const auto& t : terms) {
    Polynomial poly(dim);
    const json& poly_value = member(t, "poly");
    if (!poly_value.is_array()) throw InvalidInput("poly must be an array");
    for (const auto& entry : poly_value) {
      poly.add_term(multi_index(member(entry, "alpha"), dim, "alpha"), complex_value(entry));
    }
    out.emplace_back(std::move(poly), quad_value(member(t, "quad"), dim), shift_value(member(t, "shift"), dim));
  }
  return canonicalize(NiceFunction(dim, std::move(out)));
}

DerivativeExpansion expansion_value(const json& doc) {
  const json& quad_rows = member(doc, "quad");
  if (!quad_rows.is_array() || quad_rows.empty()) throw InvalidInput("quad must be a nonempty array");
  const std::size_t dim = quad_rows.size();
  DerivativeExpansion e{{}, quad_value(quad_rows, dim), shift_value(member(doc, "shift"), dim)};
  const json& coeffs = member(doc, "coeffs");
  if (!coeffs.is_array()) throw InvalidInput("coeffs must be an array");
  for (const auto& entry : coeffs) {
    e.coeffs[multi_index(member(entry, "beta"), dim, "beta")] += complex_value(entry);
  }
  return e;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) throw InvalidInput("cannot serialize a non-finite number");
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_json(const NiceFunction& f) {
  std::string out = "{";
  write_function_body(out, f);
  return out + "}\n";
}

std::string to_json(const NiceFunction& f, const NiceFunction& transform) {
  std::string out = "{";
  write_function_body(out, f);
  out += ",\"transform\":{";
  write_function_body(out, transform);
  return out + "}}\n";
}

std::string to_json(const DerivativeExpansion& expansion) {
  std::string out;
  write_expansion(out, expansion);
  return out + "\n";
}

std::string to_json(const std::vector<DerivativeExpansion>& expansions) {
  std::string out = "[";
  for (std::size_t k = 0; k < expansions.size(); ++k) {
    if (k) out += ",";
    write_expansion(out, expansions[k]);
  }
  return out + "]\n";
}

FunctionDocument parse_document(std::string_view text) {
  const json doc = parse_text(text);
  FunctionDocument out{function_value(doc), std::nullopt};
  if (doc.contains("transform")) {
    out.transform = function_value(doc.at("transform"));
    if (out.transform->dim() != out.function.dim()) {
      throw DimensionMismatch("transform dimension differs from function dimension");
    }
  }
  return out;
}

NiceFunction parse_function_json(std::string_view text) { return function_value(parse_text(text)); }

std::vector<DerivativeExpansion> parse_expansions_json(std::string_view text) {
  const json doc = parse_text(text);
  std::vector<DerivativeExpansion> out;
  if (doc.is_array()) {
    for (const auto& e : doc) out.push_back(expansion_value(e));
  } else {
    out.push_back(expansion_value(doc));
  }
  return out;
}

}  // namespace nicefn
