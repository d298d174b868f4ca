#pragma once

// JSON polynomial literals:
//   {"degree": d, "coeffs": [a_0, ..., a_d]}   a_0 = 1
//   {"roots": [...]}   {"angles": [...]}
//   {"degree": d, "cumulants": [kappa_1, ..., kappa_d]}
// Values are JSON integers, decimal/rational strings ("3/4", "0.1"), or JSON
// floating numbers. A literal without JSON floats is exact.

#include <string>
#include <string_view>
#include <vector>

#include "ffp/numeric.hpp"
#include "ffp/polycalc.hpp"
#include "json.hpp"

namespace ffp {

enum class LiteralForm { Coeffs, Roots, Angles, Cumulants };

struct PolyLiteral {
  LiteralForm form = LiteralForm::Coeffs;
  int degree = 0;
  std::vector<Rational> values;
  bool exact = true;
};

PolyLiteral parse_poly_literal(const nlohmann::json& j);
/// Accepts inline JSON text.
PolyLiteral parse_poly_literal(std::string_view text);

/// Reads a JSON scalar (integer, float or numeric string) as an exact rational;
/// floats become their shortest round-trip decimal. Sets *exact = false for floats.
Rational json_to_rational(const nlohmann::json& v, bool* exact = nullptr);

/// Builds the polynomial in kind S. Angles need a complex kind, exact kinds
/// reject inexact literals, and cumulant literals are inverted.
template <class S>
MonicPoly<S> build_poly(const PolyLiteral& lit);

/// Splits "a,b,c" into trimmed fields.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace ffp
