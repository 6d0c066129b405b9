#pragma once

#include <vector>

#include "krforge/polynomial.hpp"

namespace krforge {

// Distinct roots of f lying in k, sorted by Scalar::less. f's coefficients must live in a subfield of k.
// Complete over Q, finite fields, and towers whose top step has degree <= 2; for higher-degree
// characteristic-0 steps only roots already in the base are found (a warning is emitted).
std::vector<Scalar> roots_in_field(const Poly& f, const Field* k);

// Irreducibility over f.field(). Exact for degree <= 3, over Q, and for small finite fields;
// otherwise the answer is "true" with a warning.
bool is_irreducible(const Poly& f);

}  // namespace krforge
