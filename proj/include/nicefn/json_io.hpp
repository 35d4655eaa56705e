#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nicefn/basis.hpp"
#include "nicefn/nice_function.hpp"

namespace nicefn {

// JSON interchange:
//   {"dim": n, "terms": [{"poly": [{"alpha": [..], "re": x, "im": y}, ..],
//                         "quad": [[..], ..], "shift": [{"re": x, "im": y}, ..]}, ..]}
// Numbers are written with 17 significant digits. A document may carry an
// optional "transform" member holding the claimed Fourier transform of the
// function in the same schema; readers that only need the function ignore it.

std::string format_double(double value);

std::string to_json(const NiceFunction& f);
std::string to_json(const NiceFunction& f, const NiceFunction& transform);
std::string to_json(const DerivativeExpansion& expansion);
std::string to_json(const std::vector<DerivativeExpansion>& expansions);

struct FunctionDocument {
  NiceFunction function;
  std::optional<NiceFunction> transform;
};

// Parse a document; the function (and transform, if present) are canonicalized.
FunctionDocument parse_document(std::string_view text);
NiceFunction parse_function_json(std::string_view text);
std::vector<DerivativeExpansion> parse_expansions_json(std::string_view text);

}  // namespace nicefn
