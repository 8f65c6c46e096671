#pragma once

#include <string>

#include <json.hpp>

#include "nevlab/curves.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/surfaces.hpp"

namespace nevlab {

using Json = nlohmann::json;

/// Reads and parses a JSON file; InvalidInput with line/column on failure.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

/// [re_num, re_den, im_num, im_den], [num, den], an integer, or "p/q".
/// Numerators and denominators may be JSON integers or decimal strings.
GaussianRational parse_gaussian(const Json& j, const std::string& where);

/// {"const":[...]}, {"var":true}, {"sum":[...]}, {"prod":[...]},
/// {"pow":[expr,k]}, {"exp":{"poly":[coeff, ...]}} (ascending coefficients).
ExprNode parse_expr_node(const Json& j, const std::string& where = "expr");
EntireExpr parse_expr(const Json& j, const std::string& where = "expr");

/// {"components":[expr, ...], "base_point":[re, im]}
HolomorphicCurve parse_curve(const Json& j, const std::string& where = "curve");
/// {"n":..., "N":..., "list":[[coeff, ...], ...]}
HyperplaneFamily parse_hyperplanes(const Json& j, const std::string& where = "hyperplanes");
/// {"constant":c} or {"piecewise":[[t, kappa], ...]}
KappaProfile parse_kappa(const Json& j, const std::string& where = "kappa");
/// expr, or {"numerator":expr, "denominator":expr}
MeromorphicFn parse_meromorphic(const Json& j, const std::string& where = "psi");

Json gaussian_to_json(const GaussianRational& c);
/// Canonical form written back in the input grammar; parse_expr inverts it.
Json expr_to_json(const EntireExpr& e);

}  // namespace nevlab
