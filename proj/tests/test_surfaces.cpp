#include <doctest.h>

#include <random>

#include "nevlab/error.hpp"
#include "nevlab/surfaces.hpp"
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

// Decreasing piecewise-linear profile with 2..5 knots, values in [-4, 0].
KappaProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int knots = std::uniform_int_distribution<int>(2, 5)(rng);
  std::vector<std::pair<double, double>> k;
  double t = 0.0, kappa = -u(rng) * 0.5;
  for (int i = 0; i < knots; ++i) {
    k.emplace_back(t, kappa);
    t += 0.2 + 2.0 * u(rng);
    kappa = std::max(-4.0, kappa - 1.5 * u(rng));
  }
  return KappaProfile::piecewise(std::move(k));
}

}  // namespace

TEST_CASE("Gauss curvature from the metric density") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  const auto plane = ModelSurface::plane();
  const auto disc = ModelSurface::disc();
  for (int i = 0; i < 200; ++i) {
    std::complex<double> p(u(rng), u(rng));
    if (std::abs(p) > 0.95) p *= 0.95 / std::abs(p);
    CHECK(std::abs(plane.gauss_curvature(p * 20.0)) <= 1e-10);
    CHECK(std::abs(disc.gauss_curvature(p) + 1.0) <= 1e-9);
    CHECK(disc.conformal_factor(p) == doctest::Approx(2 * disc.metric_density(p)));
  }
}

TEST_CASE("geodesic and coordinate radii are inverse") {
  const auto disc = ModelSurface::disc();
  for (double r : {0.01, 0.5, 1.0, 3.0, 8.0}) {
    CHECK(disc.coordinate_radius(r) == doctest::Approx(std::tanh(r / 2)).epsilon(1e-15));
    CHECK(disc.geodesic_radius(disc.coordinate_radius(r)) == doctest::Approx(r).epsilon(1e-12));
    CHECK(ModelSurface::plane().coordinate_radius(r) == r);
  }
  CHECK(code_of([&] { disc.geodesic_radius(1.0); }) == ErrorCode::OutsideDomain);
  CHECK(disc.in_domain({0.6, 0.7}));
  CHECK_FALSE(disc.in_domain({0.8, 0.7}));
}

TEST_CASE("Green kernel: positivity, boundary value, errors") {
  for (const auto& s : {ModelSurface::plane(), ModelSurface::disc()}) {
    for (double r : {0.5, 2.0}) {
      const double big = s.coordinate_radius(r);
      double previous = std::numeric_limits<double>::infinity();
      for (double f : {0.001, 0.1, 0.5, 0.9, 0.999999}) {
        const double g = s.green_kernel(r, f * big);
        CHECK(g > 0.0);
        CHECK(g < previous);
        previous = g;
      }
      CHECK(code_of([&] { s.green_kernel(r, 1.01 * big); }) == ErrorCode::OutsideBall);
      CHECK(code_of([&] { s.green_kernel(r, 0.0); }) == ErrorCode::AtPole);
    }
  }
  CHECK(ModelSurface::from_name("disc").kind() == SurfaceKind::PoincareDisc);
  CHECK(ModelSurface::from_name("plane").name() == "plane");
  CHECK(code_of([] { ModelSurface::from_name("sphere"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("kappa profiles are validated") {
  CHECK(code_of([] { KappaProfile::constant(0.5); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { KappaProfile::piecewise({{0, -1}, {1, -0.5}}); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { KappaProfile::piecewise({{1, -1}, {1, -2}}); }) == ErrorCode::InvalidInput);
  const auto k = KappaProfile::piecewise({{0, 0}, {2, -1}});
  CHECK(k(-1) == 0.0);
  CHECK(k(1) == doctest::Approx(-0.5));
  CHECK(k(5) == -1.0);
}

TEST_CASE("Jacobi solutions satisfy initial data and stay positive") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 50; ++i) {
    const KappaProfile kappa = random_profile(rng);
    const auto sol = solve_jacobi(kappa, 6.0, 1e-3);
    CHECK(sol.t[0] == 0.0);
    CHECK(sol.G[0] == 0.0);
    CHECK(sol.Gprime[0] == 1.0);
    CHECK(sol.t[sol.t.size() - 1] == 6.0);
    CHECK((sol.G.tail(sol.G.size() - 1).array() > 0).all());
    const auto report = check_jacobi_bounds(sol, kappa);
    CHECK_MESSAGE(report.holds(), "profile " << i << " lower " << report.lower_violation << " integral "
                                             << report.integral_violation << " upper " << report.upper_violation);
  }
}

TEST_CASE("RK4 is fourth order") {
  const auto kappa = KappaProfile::constant(-1.0);
  auto err = [&](double h) {
    const auto s = solve_jacobi(kappa, 2.0, h);
    return std::abs(s.G[s.G.size() - 1] - std::sinh(2.0));
  };
  const double ratio = err(0.02) / err(0.01);
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
  const auto fine = solve_jacobi(kappa, 10.0, 1e-4);
  for (Eigen::Index i = 0; i < fine.t.size(); i += 97) CHECK(std::abs(fine.G[i] - std::sinh(fine.t[i])) <= 1e-8);
}

TEST_CASE("bound checker flags a wrong solution") {
  auto sol = solve_jacobi(KappaProfile::constant(0.0), 3.0, 1e-2);
  sol.G *= 0.9;
  CHECK_FALSE(check_jacobi_bounds(sol, KappaProfile::constant(0.0)).holds());
  auto fast = solve_jacobi(KappaProfile::constant(-4.0), 3.0, 1e-2);
  CHECK_FALSE(check_jacobi_bounds(fast, KappaProfile::constant(-0.25)).holds());
}
