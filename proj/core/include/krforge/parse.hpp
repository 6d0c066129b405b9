#pragma once

#include <string_view>

#include "krforge/polynomial.hpp"

namespace krforge {

// Polynomial expression in one variable over k: + - * / ^, parentheses, implicit multiplication,
// integer literals, and the generator names of k's tower. Division is by nonzero constants only.
Poly parse_polynomial(std::string_view text, const Field* k, std::string_view var = "x");

// Constant expression in k (same grammar without the variable).
Scalar parse_element(std::string_view text, const Field* k);

}  // namespace krforge
