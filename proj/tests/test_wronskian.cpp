#include <doctest.h>

#include <random>

#include "nevlab/error.hpp"
#include "nevlab/nochka.hpp"
#include "nevlab/wronskian.hpp"
#include "random_family.hpp"
#include "support.hpp"

using namespace nevlab;
using namespace nevlab::test;

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

EntireExpr random_component(Rng& rng) {
  const Polynomial p({GaussianRational(pick(rng, -3, 3)), GaussianRational(pick(rng, -2, 2), pick(rng, -1, 1)),
                      GaussianRational(pick(rng, 0, 1))});
  const Polynomial q = Polynomial::monomial(GaussianRational(pick(rng, -2, 2)), static_cast<int>(pick(rng, 1, 2)));
  EntireExpr e = EntireExpr::term(p.is_zero() ? Polynomial(GaussianRational(1)) : p, q);
  return e;
}

std::vector<EntireExpr> random_components(Rng& rng, int count) {
  std::vector<EntireExpr> fs;
  while (static_cast<int>(fs.size()) < count) fs.push_back(random_component(rng));
  return fs;
}

}  // namespace

TEST_CASE("common factor scales the Wronskian by its (n+1)-th power") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 3;
    auto fs = random_components(rng, k);
    const EntireExpr phi = random_component(rng);
    auto scaled = fs;
    for (auto& f : scaled) f *= phi;
    CHECK(wronskian(scaled) == pow(phi, static_cast<unsigned>(k)) * wronskian(fs));
  }
}

TEST_CASE("a constant change of basis multiplies the Wronskian by det A") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 3;
    const auto fs = random_components(rng, k);
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
    for (auto& row : a)
      for (auto& x : row) x = make_rational(pick(rng, -4, 4), pick(rng, 1, 3));
    std::vector<EntireExpr> gs(k);
    for (int col = 0; col < k; ++col)
      for (int row = 0; row < k; ++row) gs[col] += EntireExpr(GaussianRational(a[row][col])) * fs[row];
    GaussianMatrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = GaussianRational(a[i][j]);
    // det by cofactors, small k
    std::function<Rational(std::vector<std::vector<Rational>>)> det = [&](std::vector<std::vector<Rational>> b) {
      if (b.size() == 1) return b[0][0];
      Rational s = 0;
      for (std::size_t c0 = 0; c0 < b.size(); ++c0) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < b.size(); ++r) {
          std::vector<Rational> row;
          for (std::size_t c = 0; c < b.size(); ++c)
            if (c != c0) row.push_back(b[r][c]);
          minor.push_back(row);
        }
        const Rational term = b[0][c0] * det(minor);
        s += c0 % 2 ? Rational(-term) : term;
      }
      return s;
    };
    CHECK(wronskian(gs) == EntireExpr(GaussianRational(det(a))) * wronskian(fs));
  }
}

TEST_CASE("logarithmic Wronskian: invariance and W = prod f * Delta pointwise") {
  Rng rng(43);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 2;
    const auto fs = random_components(rng, k);
    const EntireExpr phi = z() * z() + z() * c(pick(rng, -2, 2)) + c(pick(rng, 1, 3));
    auto scaled = fs;
    for (auto& f : scaled) f *= phi;
    const MeromorphicPair d = log_wronskian(fs);
    const MeromorphicPair ds = log_wronskian(scaled);
    const EntireExpr w = wronskian(fs);
    CHECK(ds.numerator * d.denominator == d.numerator * ds.denominator);
    for (int p = 0; p < 20; ++p) {
      const std::complex<double> at(u(rng), u(rng));
      // The scaled quotient carries phi^(n+1) above and below; near a zero of
      // phi that cancellation costs digits.
      if (std::abs(phi.evaluate(at)) < 0.1) continue;
      const auto v = d.evaluate(at);
      CHECK(std::abs(ds.evaluate(at) - v) <= 1e-9 * std::max(1.0, std::abs(v)));
      std::complex<double> prod = 1.0;
      for (const auto& f : fs) prod *= f.evaluate(at);
      const auto wv = w.evaluate(at);
      CHECK(std::abs(prod * v - wv) <= 1e-9 * std::max(1e-300, std::abs(wv)) + 1e-12 * std::abs(prod * v));
    }
  }
  CHECK_THROWS_AS(log_wronskian({c(1), EntireExpr()}), Error);
}

TEST_CASE("non-degeneracy agrees with collocation rank") {
  Rng rng(44);
  int dependent = 0, independent = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    auto fs = random_components(rng, n + 1);
    if (trial % 3 == 0) {  // force a linear relation
      fs[n] = EntireExpr(GaussianRational(pick(rng, 1, 3))) * fs[0] + EntireExpr(GaussianRational(pick(rng, -3, 3))) * fs[n - 1];
    }
    std::vector<GaussianRational> points;
    for (int k = 0; k < n + 2; ++k)
      points.emplace_back(make_rational(pick(rng, -9, 9), pick(rng, 2, 7)), make_rational(pick(rng, -9, 9), pick(rng, 2, 7)));
    HolomorphicCurve f;
    f.components = fs;
    const bool nondeg = is_linearly_nondegenerate(f);
    const int rank = collocation_rank(fs, points);
    CHECK(nondeg == (rank == n + 1));
    (nondeg ? independent : dependent) += 1;
  }
  CHECK(dependent >= 20);
  CHECK(independent >= 20);
}

TEST_CASE("orders of vanishing") {
  CHECK(ord_at(pow(z() - c(2), 4) * exp_mono(1, 2), GaussianRational(2)) == 4);
  CHECK(ord_at(pow(z() - c(2), 4) * (z() + c(1)), std::complex<double>(2.0)) == 4);
  CHECK(ord_at(z() * z() - exp_mono(1, 1) + c(1), std::complex<double>(0.0)) == 1);
  CHECK(numeric_order(c(1) - exp_mono(1, 1) + z(), 0.0) == 2);
  MeromorphicPair m{z() * z(), pow(z(), 5)};
  CHECK(ord_at(m, GaussianRational(0)) == -3);
}

TEST_CASE("divisor inequality on a polynomial curve with high-order contacts") {
  // f = [1 : z^3 : z^5]: H = w1 vanishes to order 3, H = w2 to order 5 at 0,
  // so the weighted excess is (3-2) + (5-2) = 4 while W = 30 z^5.
  const HolomorphicCurve f = curve({c(1), pow(z(), 3), pow(z(), 5)});
  CHECK(wronskian(f.components) == c(30) * pow(z(), 5));
  const auto lines = family(2, 2, {line({1, 0, 0}), line({0, 1, 0}), line({0, 0, 1}), line({1, 1, 1})});
  const NochkaWeights w = compute_weights(lines);
  const DivisorReport rep = divisor_inequality(f, lines, w, 10.0);
  CHECK(rep.holds());
  bool origin = false;
  for (const auto& p : rep.points) {
    if (std::abs(p.location) < 1e-12) {
      origin = true;
      CHECK(p.weighted_excess == 4);
      CHECK(p.wronskian_order == 5);
    }
  }
  CHECK(origin);
}

TEST_CASE("divisor inequality on random polynomial curves and subgeneral families") {
  Rng rng(45);
  int points = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2, N = 2 + trial % 2;
    const HolomorphicCurve f = curve({c(1), pow(z() - c(pick(rng, -2, 2)), 3), pow(z(), 4) + z() * c(pick(rng, 1, 3))});
    HyperplaneFamily fam;
    do fam = random_family(rng, n, N, 2 * N - n + 2); while (!check_position(fam));
    const DivisorReport rep = divisor_inequality(f, fam, compute_weights(fam), 6.0);
    CHECK(rep.holds());
    points += static_cast<int>(rep.points.size());
  }
  CHECK(points > 0);
}
