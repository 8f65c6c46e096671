#include <doctest.h>

#include "nevlab/error.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/nochka.hpp"
#include "support.hpp"

using namespace nevlab;
using namespace nevlab::test;

namespace {

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> r;
  for (double x = start; x <= stop + 1e-9; x += step) r.push_back(x);
  return r;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidInput;
}

HolomorphicCurve one_z_expz() { return curve({c(1), z(), exp_mono(1, 1)}); }

}  // namespace

TEST_CASE("first main theorem on both surfaces and all zero classes") {
  const auto plane = ModelSurface::plane();
  const auto disc = ModelSurface::disc();
  struct Case {
    HolomorphicCurve f;
    Hyperplane h;
    ModelSurface s;
    std::vector<double> radii;
    double tol;
  };
  const std::vector<Case> cases = {
      {curve({c(1), z()}), line({1, -2}), plane, grid(0.5, 20, 0.75), 1e-6},
      {curve({c(1), z() * z() - c(2)}), line({3, 1}), plane, grid(1, 10, 1), 1e-6},
      {curve({c(1), z()}), line({1, -2}), disc, grid(0.5, 6, 0.5), 1e-6},
      {one_z_expz(), line({1, 1, 0}), plane, grid(2, 20, 1), 1e-4},
      {one_z_expz(), line({1, 0, -2}), plane, grid(2, 20, 1), 1e-4},   // lattice of zeros
      {one_z_expz(), line({1, 1, 1}), plane, grid(2, 12, 1), 1e-4},    // mixed sum, Jensen
      {one_z_expz(), line({1, 0, 3}), disc, grid(1, 5, 0.5), 1e-4},
  };
  for (const auto& cs : cases) {
    const FmtSeries s = fmt_residual(cs.f, cs.h, cs.s, cs.radii);
    CHECK_MESSAGE(s.max_deviation() <= cs.tol, "deviation " << s.max_deviation());
    for (const auto& row : s.rows) {
      CHECK(row.m >= 0.0);
      CHECK(row.N >= 0.0);
      CHECK(row.Ntrunc <= row.N + 1e-12);
      CHECK(row.N - row.T <= s.weil + cs.tol);  // Nevanlinna inequality
    }
  }
}

TEST_CASE("a zero on the circle moves the radius") {
  // 1 - 2z vanishes on |z| = 1/2.
  const FmtSeries s = fmt_residual(curve({c(1), z()}), line({1, -2}), ModelSurface::plane(), {0.25, 0.5, 1.0});
  REQUIRE(s.notes.size() == 1);
  CHECK(s.rows[1].r > 0.5);
  CHECK(s.rows[1].r < 0.5 + 1e-5);
  CHECK(s.max_deviation() <= 1e-8);
  const FmtSeries d = fmt_residual(curve({c(1), z()}), line({1, -2}), ModelSurface::disc(), {2 * std::atanh(0.5)});
  CHECK(d.notes.size() == 1);
  CHECK(d.max_deviation() <= 1e-8);
}

TEST_CASE("truncation caps multiplicities") {
  const auto plane = ModelSurface::plane();
  const EntireExpr g = pow(z() - c(1), 3) * (z() + c(2));
  const double r = 5.0;
  const double full = counting_zeros(g, plane, r, std::nullopt);
  CHECK(full == doctest::Approx(3 * std::log(5.0) + std::log(2.5)));
  CHECK(counting_zeros(g, plane, r, 2) == doctest::Approx(2 * std::log(5.0) + std::log(2.5)));
  CHECK(counting_zeros(g, plane, r, 1) == doctest::Approx(std::log(5.0) + std::log(2.5)));
  // Disc: pi g_r(0, a) = log(tanh(r/2) / |a|).
  const double R = std::tanh(1.5);
  CHECK(counting_zeros(z() - c(1) * EntireExpr(GaussianRational(make_rational(1, 2))), ModelSurface::disc(), 3.0,
                       std::nullopt) == doctest::Approx(std::log(R / 0.5)));
  CHECK(code_of([&] { counting_zeros(z() * z(), plane, 1.0, std::nullopt); }) == ErrorCode::BasePointOnDivisor);
}

TEST_CASE("characteristic is non-decreasing and dominates quotients") {
  for (const auto& s : {ModelSurface::plane(), ModelSurface::disc()}) {
    const auto f = one_z_expz();
    const auto radii = grid(0.25, s.kind() == SurfaceKind::PoincareDisc ? 6 : 20, 0.25);
    double previous = -1.0;
    for (double r : radii) {
      const double t = characteristic(f, s, r);
      CHECK(t >= previous - 1e-9);
      previous = t;
    }
    for (const auto& row : quotient_characteristics(f, s, grid(1, 6, 1)))
      CHECK_MESSAGE(row.worst <= row.T + 1e-6, "r " << row.r << " worst " << row.worst << " T " << row.T);
  }
}

TEST_CASE("T_psi(r, Phi) stays below T(r, psi) up to a constant") {
  const auto plane = ModelSurface::plane();
  for (const MeromorphicFn& psi : {MeromorphicFn{exp_mono(1, 1)}, MeromorphicFn{exp_mono(1, 2)}}) {
    double worst = -1e300;
    for (double r : {2.0, 5.0, 10.0}) worst = std::max(worst, t_psi_phi(psi, plane, r) - t_of_meromorphic(psi, plane, r));
    CHECK(worst <= 1.0);
  }
  // Zeros at the base point: T(r, z^k) = |k| log r for r >= 1.
  for (double r : {2.0, 5.0, 10.0}) {
    CHECK(t_psi_phi({z()}, plane, r) <= std::log(r) + 1.0);
    CHECK(t_psi_phi({c(1), pow(z(), 2)}, plane, r) <= 2 * std::log(r) + 1.0);
  }
  CHECK(t_psi_phi({exp_mono(1, 1)}, ModelSurface::disc(), 3.0) <=
        t_of_meromorphic({exp_mono(1, 1)}, ModelSurface::disc(), 3.0) + 1.0);
  CHECK(code_of([&] { t_psi_phi({z() - c(1)}, plane, 2.0); }) == ErrorCode::NonConvergentQuadrature);
}

TEST_CASE("meromorphic characteristic counts poles") {
  const auto plane = ModelSurface::plane();
  // 1/(z - 1/2): m = 0 for r >= 3/2 away from the pole, N = log(2r).
  const MeromorphicFn psi{c(1), z() - EntireExpr(GaussianRational(make_rational(1, 2)))};
  for (double r : {3.0, 7.0}) CHECK(t_of_meromorphic(psi, plane, r) == doctest::Approx(std::log(2 * r)).epsilon(1e-9));
}

TEST_CASE("logarithmic derivative lemma: the attainable margin") {
  // m(r, 2z) = log 2r against (3/2) log(r^2/pi): margin 2 log r - log(2 pi^1.5),
  // zero at r = 3.337 and 1 at r = 5.502.
  const auto plane = ModelSurface::plane();
  const MeromorphicFn psi{exp_mono(1, 2)};
  auto margin = [](double r) { return 2 * std::log(r) - std::log(2 * std::pow(kPi, 1.5)); };
  const LdlReport at3 = ldl_check(psi, plane, {3.0}, 1);
  CHECK(at3.min_margin() == doctest::Approx(margin(3.0)).epsilon(1e-6));
  CHECK(at3.min_margin() < 0.0);
  CHECK(ldl_check(psi, plane, grid(3.35, 40, 0.5), 1).min_margin() >= 0.0);
  CHECK(ldl_check(psi, plane, grid(5.51, 40, 0.5), 1).min_margin() >= 1.0);
  CHECK(std::exp((1 + std::log(2 * std::pow(kPi, 1.5))) / 2) == doctest::Approx(5.502).epsilon(1e-3));

  // Second order: X^2 psi / psi = 4 z^2 + 2.
  const LdlReport second = ldl_check(psi, plane, grid(4, 30, 2), 2);
  for (const auto& row : second.rows) CHECK(row.m == doctest::Approx(std::log(4 * row.r * row.r)).epsilon(2e-3));
  CHECK(second.violation_fraction() == 0.0);

  const LdlReport disc = ldl_check({z() * z() + c(1)}, ModelSurface::disc(), grid(1, 5, 1), 1);
  CHECK(disc.c0 >= 0.0);
  for (const auto& row : disc.rows) CHECK(row.error_term >= row.r * row.r - 1e-12);  // -kappa r^2 with kappa = -1
}

TEST_CASE("pointwise weighted inequality stays bounded below") {
  const auto lines = family(2, 2, {line({1, 0, 0}), line({0, 0, 1}), line({1, 1, 0}), line({1, -1, 1})});
  const NochkaWeights w = compute_weights(lines);
  double lowest = 1e300;
  for (double r : {1.0, 3.0, 6.0}) {
    const PointwiseReport rep = pointwise_ratio(one_z_expz(), lines, w, ModelSurface::plane(), r, 100, 17);
    CHECK(rep.points.size() == 100);
    CHECK(std::isfinite(rep.min_log_ratio()));
    lowest = std::min(lowest, rep.min_log_ratio());
  }
  CHECK(lowest > -10.0);
}

TEST_CASE("second main theorem errors") {
  const auto plane = ModelSurface::plane();
  const auto lines = family(2, 2, {line({1, 0, 0}), line({0, 0, 1}), line({1, 1, 0}), line({1, -1, 1})});
  const NochkaWeights w = compute_weights(lines);
  CHECK(code_of([&] { smt_margin(curve({c(1), z(), c(2) * z()}), lines, w, plane, {2, 3}); }) == ErrorCode::Degenerate);
  auto bad = lines;
  bad.hyperplanes[3] = line({2, 0, 0});
  CHECK(code_of([&] { smt_margin(one_z_expz(), bad, w, plane, {2, 3}); }) == ErrorCode::PositionViolated);
  CHECK(code_of([&] { fmt_residual(curve({c(1), z()}), line({0, 1}), plane, {2}); }) == ErrorCode::BasePointOnDivisor);
  CHECK(code_of([&] { weil_function(line({0, 1}), curve({c(1), z()})); }) == ErrorCode::BasePointOnDivisor);
}

TEST_CASE("second main theorem on the disc") {
  const auto lines = family(2, 2, {line({1, 0, 0}), line({0, 0, 1}), line({1, 1, 0}), line({1, -1, 1})});
  const SmtReport rep = smt_margin(one_z_expz(), lines, compute_weights(lines), ModelSurface::disc(), grid(1, 6, 0.5));
  CHECK(rep.coefficient == 1);
  for (const auto& row : rep.rows) CHECK(row.margin == doctest::Approx(row.lhs - row.counted));
  for (double d : rep.defects) {
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}
