#pragma once

#include <string>

#include <json.hpp>

#include "varjet/integral_forms.hpp"

namespace varjet {

/// "r:s" -> signature dimensions.
std::pair<int, int> parse_signature_spec(const std::string& text);

/// "x:even,y:even,th:odd" -> fiber list. Names must be identifiers and must not
/// collide with the reserved heads t, dt, G, Vol.
std::vector<std::pair<std::string, Parity>> parse_fiber_spec(const std::string& text);

/// Context from the two CLI strings.
JetContextPtr make_context(const std::string& sig_spec, const std::string& fiber_spec);

/// Parses a whitespace-insensitive infix expression over the context's
/// coordinates into a canonical polynomial. Atoms: rational literals `n` and
/// `n/d`, `t[i]`, `dt[i]`, `name[c; i1 i2 ...]` (component c among the fiber
/// coordinates sharing that name), `G[a; i1 i2 ...]`; operators `+ - * ^` and
/// parentheses. Unsorted bracket indices canonicalize with their Koszul sign.
/// Raising an odd atom to a power >= 2 is rejected at parse time.
GradedPoly parse_poly(const std::string& text, const JetContextPtr& ctx);

/// Same grammar extended with volume-symbol atoms `Vol[i1 i2 ...]` / `Vol[]`.
/// Every additive term must carry exactly one volume symbol.
IntegralForm parse_integral_form(const std::string& text, const JetContextPtr& ctx);

/// Canonical rendering; parse_poly(print_poly(p)) == p for any polynomial over
/// the context's coordinates.
std::string print_poly(const GradedPoly& p);
std::string print_integral_form(const IntegralForm& w);

/// Versioned JSON rendering ("schema": 1): list of terms, each with the exact
/// coefficient (num, den) and (generator, exponent) factors; jet generators
/// carry {fiber, multi}.
nlohmann::json poly_to_json(const GradedPoly& p);
nlohmann::json integral_form_to_json(const IntegralForm& w);

}  // namespace varjet
