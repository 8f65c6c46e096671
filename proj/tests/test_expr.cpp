#include <doctest.h>

#include <random>

#include "nevlab/error.hpp"
#include "nevlab/expr_json.hpp"
#include "nevlab/roots.hpp"
#include "support.hpp"

using namespace nevlab;
using namespace nevlab::test;

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

GaussianRational small_gaussian(Rng& rng) {
  return GaussianRational(make_rational(pick(rng, -3, 3), pick(rng, 1, 3)), make_rational(pick(rng, -2, 2), pick(rng, 1, 2)));
}

// Trees of depth <= 5 with bounded fan-out so products stay small.
ExprNode random_node(Rng& rng, int depth) {
  const long kind = depth >= 5 ? pick(rng, 0, 2) : pick(rng, 0, 5);
  switch (kind) {
    case 0: return {ExprNode::Const{small_gaussian(rng)}};
    case 1: return {ExprNode::Var{}};
    case 2: {
      std::vector<GaussianRational> q;
      for (long k = 0, d = pick(rng, 0, 2); k <= d; ++k) q.push_back(small_gaussian(rng));
      return {ExprNode::Exp{Polynomial(std::move(q))}};
    }
    case 3:
    case 4: {
      std::vector<ExprNode> items;
      for (long k = 0, m = pick(rng, 1, 3); k < m; ++k) items.push_back(random_node(rng, depth + 1));
      if (kind == 3) return {ExprNode::Sum{std::move(items)}};
      return {ExprNode::Prod{std::move(items)}};
    }
    default:
      return {ExprNode::Pow{std::make_shared<ExprNode>(random_node(rng, depth + 1)), static_cast<unsigned>(pick(rng, 0, 3))}};
  }
}

std::complex<double> random_point(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("differentiation stays canonical and matches central differences") {
  Rng rng(20240601);
  const double h = 1e-5;
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const EntireExpr e = to_canonical(random_node(rng, 1));
    REQUIRE(e.is_canonical());
    const EntireExpr d = e.derivative();
    REQUIRE(d.is_canonical());
    CHECK(derivative(e, 2) == d.derivative());
    for (const auto& t : d.terms()) CHECK(t.exponent.degree() <= 2);

    const auto p = random_point(rng, 1.0);
    const auto exact = d.evaluate(p);
    const auto numeric = (e.evaluate(p + h) - e.evaluate(p - h)) / (2 * h);
    // Truncation error scales with the third derivative; the bound is relative to it.
    const double scale = 1.0 + std::abs(exact) + std::abs(derivative(e, 3).evaluate(p));
    CHECK(std::abs(numeric - exact) <= 1e-6 * scale);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("canonical form merges equal exponents and drops zeros") {
  const EntireExpr a = exp_mono(1, 1) * (z() + c(1)) + exp_mono(1, 1) * (c(-1) - z());
  CHECK(a.is_zero());
  const EntireExpr b = exp_mono(2, 1) + z() + exp_mono(1, 1) * exp_mono(1, 1);
  CHECK(b.terms().size() == 2);
  CHECK(b.is_canonical());
  CHECK((exp_mono(1, 1) * exp_mono(-1, 1)).is_constant());
  CHECK(pow(z() + c(1), 3) == (z() + c(1)) * (z() + c(1)) * (z() + c(1)));
}

TEST_CASE("evaluation accuracy and overflow policy") {
  const EntireExpr e = (z() * z() - c(2)) * exp_mono(1, 1);
  for (std::complex<double> p : {std::complex<double>(10, 3), std::complex<double>(-40, 20), std::complex<double>(0, 50)}) {
    const auto expected = (p * p - 2.0) * std::exp(p);
    CHECK(std::abs(e.evaluate(p) - expected) <= 1e-12 * std::abs(expected));
  }
  CHECK_THROWS_AS(exp_mono(1, 1).evaluate(800.0), Error);
  try {
    exp_mono(1, 1).evaluate(800.0);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::Overflow);
  }
  const ScaledValue v = (exp_mono(1, 1) * c(3)).evaluate_scaled(800.0);
  CHECK(v.log_abs() == doctest::Approx(800.0 + std::log(3.0)).epsilon(1e-14));
  CHECK(CompiledExpr(e).evaluate({1.5, -0.5}) == e.evaluate({1.5, -0.5}));
}

TEST_CASE("zero_divisor agrees with evaluation") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial p(small_gaussian(rng) + GaussianRational(4));
    int degree = 0;
    for (long k = 0, m = pick(rng, 1, 4); k < m; ++k) {
      const GaussianRational root(make_rational(pick(rng, -9, 9), pick(rng, 1, 4)), make_rational(pick(rng, -9, 9), pick(rng, 1, 4)));
      const long mult = pick(rng, 1, 3);
      for (long j = 0; j < mult; ++j) p *= Polynomial::linear_factor(root);
      degree += static_cast<int>(mult);
    }
    std::vector<GaussianRational> q = {small_gaussian(rng), small_gaussian(rng)};
    const EntireExpr e = EntireExpr::term(p, Polynomial(std::move(q)));
    const ZeroDivisor d = zero_divisor(e, 100.0);
    CHECK(d.total_multiplicity() == degree);
    for (const auto& zero : d.zeros) {
      CHECK(zero.multiplicity >= 1);
      // Rounding near a multiple root is of order eps * sum |c_k| |z|^k.
      double scale = 0.0;
      const auto cs = p.to_complex();
      for (std::size_t k = 0; k < cs.size(); ++k) scale += std::abs(cs[k]) * std::pow(std::abs(zero.location), double(k));
      scale *= std::abs(std::exp(e.terms()[0].exponent.evaluate(zero.location)));
      CHECK(std::abs(e.evaluate(zero.location)) <= 1e-9 * scale);
    }
    for (std::size_t i = 0; i < d.zeros.size(); ++i)
      for (std::size_t j = i + 1; j < d.zeros.size(); ++j)
        CHECK(std::abs(d.zeros[i].location - d.zeros[j].location) >
              d.zeros[i].certified_radius + d.zeros[j].certified_radius);
  }
}

TEST_CASE("zero_divisor errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidInput;
  };
  CHECK(code_of([] { zero_divisor(EntireExpr(), 1.0); }) == ErrorCode::IdenticallyZero);
  CHECK(code_of([] { zero_divisor(z() - c(1), 1.0); }) == ErrorCode::ZeroOnBoundary);
  CHECK(code_of([] { zero_divisor(z() + exp_mono(1, 2), 1.0); }) == ErrorCode::UnsupportedZeroSet);
  CHECK_FALSE(zero_set_supported(z() + exp_mono(1, 2)));
  CHECK(zero_set_supported(c(1) - exp_mono(1, 1)));
}

TEST_CASE("the exponential lattice class has simple zeros at 2 pi i k") {
  const ZeroDivisor d = zero_divisor(c(1) - exp_mono(1, 1), 20.0);
  CHECK(d.zeros.size() == 7);  // k = -3..3
  for (const auto& zero : d.zeros) {
    CHECK(zero.multiplicity == 1);
    CHECK(std::abs(zero.location.real()) < 1e-12);
    const double k = zero.location.imag() / (2 * kPi);
    CHECK(std::abs(k - std::round(k)) < 1e-12);
  }
}

TEST_CASE("JSON round trip") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const EntireExpr e = to_canonical(random_node(rng, 2));
    CHECK(parse_expr(expr_to_json(e)) == e);
    CHECK(parse_expr(parse_json_text(expr_to_json(e).dump())) == e);
  }
  CHECK(parse_gaussian(Json("3/6"), "x") == GaussianRational(make_rational(1, 2)));
  CHECK(parse_gaussian(Json::array({1, 2, -1, 3}), "x") == GaussianRational(make_rational(1, 2), make_rational(-1, 3)));
  CHECK(parse_gaussian(Json("123456789012345678901234567890"), "x").re.get_num().get_str() ==
        "123456789012345678901234567890");
}

TEST_CASE("JSON errors carry the field path") {
  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidInput);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const Json bad = load_json_file(data_path("bad_coefficient.json"));
  CHECK(message([&] { parse_hyperplanes(bad["hyperplanes"]); }).find("at hyperplanes.list[1][1]") != std::string::npos);
  CHECK(message([] { parse_gaussian(Json(0.5), "c"); }).find("not exact") != std::string::npos);
  CHECK(message([] { parse_expr(parse_json_text(R"({"sum":[{"var":true},{"cos":1}]})")); }).find("at expr.sum[1]") !=
        std::string::npos);
  CHECK(message([] { parse_expr(parse_json_text(R"({"pow":[{"var":true},-1]})")); }).find("expr.pow[1]") !=
        std::string::npos);
  CHECK(message([] { parse_curve(parse_json_text(R"({"components":[{"const":0},{"const":0}]})")); })
            .find("vanish") != std::string::npos);
  CHECK(message([] { parse_json_text("{\"a\": [1, 2"); }).find("JSON syntax error") != std::string::npos);
  CHECK(message([] { parse_kappa(parse_json_text(R"({"constant": 0.5})")); }).find("at kappa") != std::string::npos);
  CHECK(message([] { load_json_file("/nonexistent/x.json"); }).find("cannot open") != std::string::npos);
}
