#include "nevlab/expr_json.hpp"

#include <fstream>
#include <sstream>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, "at " + where + ": " + what);
}

mpz_class parse_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail(where, "'" + j.get<std::string>() + "' is not an integer");
    return v;
  }
  fail(where, "expected an integer, got " + std::string(j.type_name()));
}

Rational parse_fraction(const Json& num, const Json& den, const std::string& where) {
  const mpz_class d = parse_integer(den, where);
  if (d == 0) fail(where, "zero denominator");
  Rational q(parse_integer(num, where), d);
  q.canonicalize();
  return q;
}

Json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Polynomial parse_poly_coeffs(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a coefficient array");
  std::vector<GaussianRational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(parse_gaussian(j[k], where + "[" + std::to_string(k) + "]"));
  return Polynomial(std::move(c));
}

const Json& only_key(const Json& j, const std::string& where, std::string& key) {
  if (!j.is_object() || j.size() != 1) fail(where, "expected an object with exactly one key");
  key = j.begin().key();
  return j.begin().value();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("JSON syntax error: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

GaussianRational parse_gaussian(const Json& j, const std::string& where) {
  if (j.is_number_integer() || j.is_number_unsigned()) return GaussianRational(Rational(parse_integer(j, where)));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
      fail(where, "'" + j.get<std::string>() + "' is not a fraction");
    q.canonicalize();
    return GaussianRational(q);
  }
  if (j.is_array() && j.size() == 2) return GaussianRational(parse_fraction(j[0], j[1], where));
  if (j.is_array() && j.size() == 4)
    return GaussianRational(parse_fraction(j[0], j[1], where), parse_fraction(j[2], j[3], where));
  if (j.is_number_float()) fail(where, "floating-point coefficients are not exact; use [num, den]");
  fail(where, "expected [re_num, re_den, im_num, im_den]");
}

ExprNode parse_expr_node(const Json& j, const std::string& where) {
  std::string key;
  const Json& v = only_key(j, where, key);
  const std::string at = where + "." + key;
  if (key == "const") return {ExprNode::Const{parse_gaussian(v, at)}};
  if (key == "var") {
    if (v != true) fail(at, "expected true");
    return {ExprNode::Var{}};
  }
  if (key == "sum" || key == "prod") {
    if (!v.is_array()) fail(at, "expected an array");
    std::vector<ExprNode> items;
    for (std::size_t k = 0; k < v.size(); ++k) items.push_back(parse_expr_node(v[k], at + "[" + std::to_string(k) + "]"));
    if (key == "sum") return {ExprNode::Sum{std::move(items)}};
    return {ExprNode::Prod{std::move(items)}};
  }
  if (key == "pow") {
    if (!v.is_array() || v.size() != 2) fail(at, "expected [expr, k]");
    if (!v[1].is_number_integer() || v[1].get<long long>() < 0 || v[1].get<long long>() > 1000)
      fail(at + "[1]", "exponent must be an integer in 0..1000");
    return {ExprNode::Pow{std::make_shared<ExprNode>(parse_expr_node(v[0], at + "[0]")),
                          static_cast<unsigned>(v[1].get<long long>())}};
  }
  if (key == "exp") {
    if (!v.is_object() || !v.contains("poly")) fail(at, "expected {\"poly\": [...]}");
    return {ExprNode::Exp{parse_poly_coeffs(v["poly"], at + ".poly")}};
  }
  fail(where, "unknown node '" + key + "'");
}

EntireExpr parse_expr(const Json& j, const std::string& where) { return to_canonical(parse_expr_node(j, where)); }

HolomorphicCurve parse_curve(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("components")) fail(where, "expected {\"components\": [...]}");
  const Json& c = j["components"];
  if (!c.is_array() || c.size() < 2) fail(where + ".components", "need at least two components");
  HolomorphicCurve f;
  for (std::size_t k = 0; k < c.size(); ++k)
    f.components.push_back(parse_expr(c[k], where + ".components[" + std::to_string(k) + "]"));
  if (j.contains("base_point")) {
    const Json& b = j["base_point"];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      fail(where + ".base_point", "expected [re, im]");
    f.base_point = {b[0].get<double>(), b[1].get<double>()};
  }
  bool nonzero = false;
  for (const auto& e : f.components) nonzero = nonzero || !e.is_zero();
  if (!nonzero) fail(where, "all components vanish identically");
  return f;
}

HyperplaneFamily parse_hyperplanes(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const char* k : {"n", "N", "list"})
    if (!j.contains(k)) fail(where, std::string("missing \"") + k + "\"");
  if (!j["n"].is_number_integer() || !j["N"].is_number_integer()) fail(where, "n and N must be integers");
  HyperplaneFamily fam;
  fam.n = j["n"].get<int>();
  fam.N = j["N"].get<int>();
  if (fam.n < 1 || fam.N < fam.n) fail(where, "need 1 <= n <= N");
  const Json& list = j["list"];
  if (!list.is_array()) fail(where + ".list", "expected an array");
  if (list.size() > 30) fail(where + ".list", "at most 30 hyperplanes");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + ".list[" + std::to_string(i) + "]";
    if (!list[i].is_array() || static_cast<int>(list[i].size()) != fam.n + 1)
      fail(at, "expected " + std::to_string(fam.n + 1) + " coefficients");
    Hyperplane h;
    bool nonzero = false;
    for (std::size_t k = 0; k < list[i].size(); ++k) {
      h.coefficients.push_back(parse_gaussian(list[i][k], at + "[" + std::to_string(k) + "]"));
      nonzero = nonzero || !h.coefficients.back().is_zero();
    }
    if (!nonzero) fail(at, "all coefficients are zero");
    fam.hyperplanes.push_back(std::move(h));
  }
  return fam;
}

KappaProfile parse_kappa(const Json& j, const std::string& where) {
  std::string key;
  const Json& v = only_key(j, where, key);
  try {
    if (key == "constant") {
      if (!v.is_number()) fail(where + ".constant", "expected a number");
      return KappaProfile::constant(v.get<double>());
    }
    if (key == "piecewise") {
      if (!v.is_array()) fail(where + ".piecewise", "expected [[t, kappa], ...]");
      std::vector<std::pair<double, double>> knots;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array() || v[i].size() != 2 || !v[i][0].is_number() || !v[i][1].is_number())
          fail(where + ".piecewise[" + std::to_string(i) + "]", "expected [t, kappa]");
        knots.emplace_back(v[i][0].get<double>(), v[i][1].get<double>());
      }
      return KappaProfile::piecewise(std::move(knots));
    }
  } catch (const Error& e) {
    if (std::string(e.what()).starts_with("at ")) throw;
    fail(where, e.what());
  }
  fail(where, "unknown kappa form '" + key + "'");
}

MeromorphicFn parse_meromorphic(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("numerator")) {
    MeromorphicFn m{parse_expr(j["numerator"], where + ".numerator")};
    if (j.contains("denominator")) m.denominator = parse_expr(j["denominator"], where + ".denominator");
    if (m.denominator.is_zero()) fail(where + ".denominator", "identically zero");
    return m;
  }
  return {parse_expr(j, where)};
}

Json gaussian_to_json(const GaussianRational& c) {
  return Json::array({integer_to_json(c.re.get_num()), integer_to_json(c.re.get_den()),
                      integer_to_json(c.im.get_num()), integer_to_json(c.im.get_den())});
}

Json expr_to_json(const EntireExpr& e) {
  Json sum = Json::array();
  for (const auto& t : e.terms()) {
    Json poly = Json::array();
    for (int k = 0; k <= t.poly.degree(); ++k) {
      const auto& c = t.poly.coeff(k);
      if (c.is_zero()) continue;
      poly.push_back(Json{{"prod", Json::array({Json{{"const", gaussian_to_json(c)}},
                                                 Json{{"pow", Json::array({Json{{"var", true}}, k})}}})}});
    }
    Json ex = Json::array();
    for (const auto& c : t.exponent.coeffs()) ex.push_back(gaussian_to_json(c));
    sum.push_back(Json{{"prod", Json::array({Json{{"sum", poly}}, Json{{"exp", Json{{"poly", ex}}}}})}});
  }
  return Json{{"sum", sum}};
}

}  // namespace nevlab
