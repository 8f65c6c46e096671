#include <doctest.h>

#include <random>

#include "nevlab/error.hpp"
#include "nevlab/exact_lp.hpp"
#include "nevlab/nochka.hpp"
#include "random_family.hpp"
#include "support.hpp"

using namespace nevlab;
using namespace nevlab::test;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidInput;
}

NochkaWeights uniform(std::size_t q, Rational g) {
  NochkaWeights w;
  w.gamma_j.assign(q, g);
  w.gamma = g;
  return w;
}

const HyperplaneFamily& six_points() {
  static const auto f =
      family(1, 2, {line({1, 0}), line({0, 1}), line({1, 1}), line({1, -1}), line({1, 2}), line({2, 1})});
  return f;
}

}  // namespace

TEST_CASE("computed weights always verify, with the identity exact") {
  std::mt19937_64 rng(31);
  int families = 0;
  for (int attempt = 0; families < 30 && attempt < 2000; ++attempt) {
    const int n = 1 + attempt % 3;
    const int N = n + attempt % 2;
    const int q = 2 * N - n + 2 + attempt % 3;
    if (q > 10) continue;
    const HyperplaneFamily fam = random_family(rng, n, N, q);
    if (!check_position(fam)) continue;
    ++families;
    const NochkaWeights w = compute_weights(fam);
    const WeightCheck check = verify_weights(fam, w);
    CHECK_MESSAGE(check.ok, check.failure);
    Rational sum = 0;
    for (const auto& g : w.gamma_j) sum += g;
    CHECK(w.gamma * (q - 2 * N + n - 1) == sum - n - 1);
    // Deterministic: same input, same vertex.
    const NochkaWeights again = compute_weights(fam);
    CHECK(again.gamma_j == w.gamma_j);
  }
  CHECK(families == 30);
}

TEST_CASE("verify_weights rejects each broken condition") {
  const auto& six = six_points();
  CHECK(verify_weights(six, uniform(6, make_rational(1, 2))).ok);

  auto w = uniform(6, make_rational(1, 2));
  w.gamma_j[0] = 0;
  CHECK_FALSE(verify_weights(six, w).ok);

  w = uniform(6, make_rational(1, 2));
  w.gamma = make_rational(2, 3);
  CHECK_FALSE(verify_weights(six, w).ok);

  w = uniform(6, make_rational(2, 3));  // above n/N and breaks the identity
  CHECK_FALSE(verify_weights(six, w).ok);

  // Two copies of a point are fine: {copy, copy, other} sums to 3/2 <= rank 2.
  const auto doubled = family(1, 2, {line({1, 0}), line({1, 0}), line({0, 1}), line({1, 1}), line({1, -1}), line({1, 2})});
  CHECK(verify_weights(doubled, uniform(6, make_rational(1, 2))).ok);

  // Three copies: that triple sums to 3/2 > rank 1.
  const auto tripled = family(1, 2, {line({1, 0}), line({2, 0}), line({3, 0}), line({0, 1}), line({1, 1}), line({1, -1})});
  const WeightCheck rank = verify_weights(tripled, uniform(6, make_rational(1, 2)));
  CHECK_FALSE(rank.ok);
  CHECK_FALSE(rank.failure.empty());
}

TEST_CASE("compute_weights preconditions") {
  // q = 2N - n + 1 leaves the SMT coefficient at zero: no weights requested.
  CHECK(code_of([] { compute_weights(family(1, 1, {line({1, 0}), line({0, 1})})); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { compute_weights(family(1, 1, {line({1, 0}), line({2, 0}), line({0, 1}), line({1, 1})})); }) ==
        ErrorCode::PositionViolated);
}

TEST_CASE("subset selection on the six-point family") {
  const auto& six = six_points();
  const auto w = uniform(6, make_rational(1, 2));
  const std::vector<Rational> betas = {Rational(4), Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)};
  for_each_subset(6, 3, [&](IndexMask m) {
    const std::vector<int> q = mask_to_indices(m);
    const auto sel = select_subset(six, w, q, betas);
    CHECK(static_cast<int>(sel.size()) == rank_of_subset(six, q));
    CHECK(rank_of_subset(six, sel) == rank_of_subset(six, q));
    for (int j : sel) CHECK(std::find(q.begin(), q.end(), j) != q.end());
    CHECK(weighted_product_le(q, w.gamma_j, sel, betas));
  });
  // The selection must take the heavy point when it is available.
  const auto sel = select_subset(six, w, {0, 1, 2}, betas);
  CHECK(std::find(sel.begin(), sel.end(), 0) != sel.end());

  CHECK(code_of([&] { select_subset(six, w, {0, 1}, {Rational(1), make_rational(1, 2), 1, 1, 1, 1}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([&] { select_subset(six, w, {0, 1, 2, 3}, betas); }) == ErrorCode::InvalidInput);
}

TEST_CASE("weighted product comparison is exact") {
  // 2^(1/2) * 2^(1/2) = 2: equality must count as <=.
  const std::vector<Rational> g = {make_rational(1, 2), make_rational(1, 2)};
  CHECK(weighted_product_le({0, 1}, g, {0}, {Rational(2), Rational(2)}));
  CHECK_FALSE(weighted_product_le({0, 1}, {Rational(1), Rational(1)}, {0}, {Rational(2), Rational(2)}));
  CHECK(weighted_product_le({0, 1}, {make_rational(2, 3), make_rational(1, 3)}, {1}, {Rational(8), Rational(4)}) == false);
}

TEST_CASE("exact simplex") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {Rational(1), Rational(1)};
  lp.rows.push_back({{Rational(1), Rational(2)}, Sense::LessEqual, Rational(4)});
  lp.rows.push_back({{Rational(3), Rational(1)}, Sense::LessEqual, Rational(6)});
  const LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x[0] == make_rational(8, 5));
  CHECK(r.x[1] == make_rational(6, 5));
  CHECK(r.value == make_rational(14, 5));

  LinearProgram eq = lp;
  eq.rows.push_back({{Rational(1), Rational(-1)}, Sense::Equal, Rational(0)});
  const LpResult e = solve_lp(eq);
  REQUIRE(e.status == LpStatus::Optimal);
  CHECK(e.x[0] == make_rational(4, 3));
  CHECK(e.x[0] == e.x[1]);

  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {Rational(1)};
  infeasible.rows.push_back({{Rational(1)}, Sense::GreaterEqual, Rational(2)});
  infeasible.rows.push_back({{Rational(1)}, Sense::LessEqual, Rational(1)});
  CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {Rational(1), Rational(0)};
  unbounded.rows.push_back({{Rational(0), Rational(1)}, Sense::LessEqual, Rational(1)});
  CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);
}
