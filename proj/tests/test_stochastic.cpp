#include <doctest.h>

#include <cstring>

#include "nevlab/error.hpp"
#include "nevlab/stochastic.hpp"
#include "support.hpp"

using namespace nevlab;
using namespace nevlab::test;

namespace {

PathConfig config(ModelSurface s, double r, double dt, std::size_t paths, std::uint64_t seed = 7) {
  PathConfig cfg;
  cfg.surface = s;
  cfg.radius = r;
  cfg.dt = dt;
  cfg.n_paths = paths;
  cfg.master_seed = seed;
  return cfg;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Comparison compare(const std::vector<double>& samples, double reference) {
  const Estimate e = estimate(samples);
  return {e.mean, e.std_error, reference};
}

}  // namespace

TEST_CASE("per-path seeds") {
  CHECK(path_seed(7, 0) == path_seed(7, 0));
  CHECK(path_seed(7, 0) != path_seed(7, 1));
  CHECK(path_seed(7, 0) != path_seed(8, 0));
}

TEST_CASE("estimates and the KS statistic") {
  const Estimate e = estimate(std::vector<double>{1, 2, 3, 4});
  CHECK(e.mean == 2.5);
  CHECK(e.variance == doctest::Approx(5.0 / 3.0));
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000);
  CHECK(ks_uniform_statistic(grid) == doctest::Approx(0.0005));
  CHECK(ks_uniform_statistic(std::vector<double>(100, 0.25)) == doctest::Approx(0.75));
}

TEST_CASE("results do not depend on the thread count") {
  const std::vector<Integrand> integrands = {{"rho2", [](std::complex<double> z) { return std::norm(z); }}};
  for (const auto& s : {ModelSurface::plane(), ModelSurface::disc()}) {
    const PathConfig cfg = config(s, 1.0, 1e-3, 3000, 99);
    const ExitStats one = simulate_exit(cfg, integrands, 1);
    const ExitStats three = simulate_exit(cfg, integrands, 3);
    CHECK(same_bits(one.tau, three.tau));
    CHECK(same_bits(one.functional("rho2"), three.functional("rho2")));
    CHECK(std::memcmp(one.exit_points.data(), three.exit_points.data(), one.size() * sizeof(one.exit_points[0])) == 0);
    const ExitStats other = simulate_exit(config(s, 1.0, 1e-3, 3000, 100), integrands, 1);
    CHECK_FALSE(same_bits(one.tau, other.tau));
  }
}

TEST_CASE("Dynkin formula on the plane") {
  const PathConfig cfg = config(ModelSurface::plane(), 1.0, 1e-3, 20000, 3);
  const DynkinReport harmonic =
      check_dynkin(cfg, [](std::complex<double> z) { return z.real(); }, [](std::complex<double>) { return 0.0; });
  CHECK(harmonic.rhs.mean == 0.0);
  CHECK(std::abs(harmonic.lhs.mean) <= 3 * harmonic.lhs.std_error);
  CHECK(harmonic.holds());

  const DynkinReport sq =
      check_dynkin(cfg, [](std::complex<double> z) { return std::norm(z); }, [](std::complex<double>) { return 4.0; });
  CHECK(sq.lhs.mean == doctest::Approx(1.0).epsilon(1e-12));  // exits are projected onto the circle
  CHECK(std::abs(sq.rhs.mean - 1.0) <= 3 * sq.rhs.std_error);
  CHECK(sq.holds());
}

TEST_CASE("harmonic measure and co-area on the disc") {
  const auto disc = ModelSurface::disc();
  const double r = 1.5;
  const std::vector<std::pair<std::string, PointFn>> fns = {
      {"one", [](std::complex<double>) { return 1.0; }},
      {"re", [](std::complex<double> z) { return z.real(); }},
      {"rho2", [](std::complex<double> z) { return std::norm(z); }},
      {"cos2", [](std::complex<double> z) { return std::norm(z) > 0 ? std::cos(2 * std::arg(z)) : 0.0; }},
      {"bump", [](std::complex<double> z) { return std::exp(-4 * std::norm(z - 0.3)); }},
  };
  std::vector<Integrand> integrands;
  for (const auto& [name, fn] : fns) integrands.push_back({name, fn});
  const ExitStats st = simulate_exit(config(disc, r, 1e-3, 20000, 11), integrands, 0);
  for (const auto& [name, fn] : fns) {
    std::vector<double> at_exit;
    for (const auto& p : st.exit_points) at_exit.push_back(fn(p));
    const Comparison h = compare(at_exit, boundary_mean(disc, r, fn));
    CHECK_MESSAGE(h.within(3.0), name << " harmonic z = " << h.z_score());
    const Comparison o = compare(st.functional(name), coarea_integral(disc, r, fn));
    CHECK_MESSAGE(o.within(3.0), name << " occupation z = " << o.z_score());
  }
  CHECK(exit_angle_uniformity(st).passes());
}

TEST_CASE("step refinement leaves the flat mean exit time at r^2 / 2") {
  const ExitStats coarse = simulate_exit(config(ModelSurface::plane(), 1.0, 1e-3, 20000, 21), {}, 0);
  const ExitStats fine = simulate_exit(config(ModelSurface::plane(), 1.0, 5e-4, 20000, 22), {}, 0);
  const Estimate a = estimate(coarse.tau), b = estimate(fine.tau);
  CHECK(std::abs(a.mean - 0.5) <= 3 * a.std_error);
  CHECK(std::abs(b.mean - 0.5) <= 3 * b.std_error);
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("exit-time bound") {
  const ExitStats plane = simulate_exit(config(ModelSurface::plane(), 1.0, 1e-3, 10000, 5), {}, 0);
  const ExitTimeBound b = check_exit_time_bound(plane, 1.0);
  CHECK(b.bound == 4.0);
  CHECK(b.holds());
  const ExitStats disc = simulate_exit(config(ModelSurface::disc(), 2.0, 1e-3, 10000, 6), {}, 0);
  const ExitTimeBound d = check_exit_time_bound(disc, 2.0);
  CHECK(d.holds());
  CHECK(d.tau.mean < 2.0);  // faster than flat
  CHECK(d.tau.mean == doctest::Approx(coarea_integral(ModelSurface::disc(), 2.0, [](std::complex<double>) { return 1.0; })).epsilon(0.03));
  const ExitStats small = simulate_exit(config(ModelSurface::plane(), 1.0, 1e-3, 100, 5), {}, 0);
  CHECK_THROWS_AS(check_exit_time_bound(small, 1.0), Error);
  const ExitStats tiny = simulate_exit(config(ModelSurface::plane(), 0.05, 1e-6, 2000, 5), {}, 0);
  CHECK(estimate(tiny.tau).mean < 0.002);
}

TEST_CASE("Monte Carlo calculus lemma row matches quadrature") {
  const PointFn k = [](std::complex<double> z) { return std::norm(z); };
  const CalculusLemmaRow mc = calculus_lemma_ratio_mc(config(ModelSurface::plane(), 3.0, 1e-3, 4000, 8), k, 0.1, 0);
  const CalculusLemmaRow quad = calculus_lemma_ratio(ModelSurface::plane(), k, 0.1, {3.0}).front();
  CHECK(mc.lhs == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(mc.occupation == doctest::Approx(quad.occupation).epsilon(0.05));
  CHECK(mc.ratio == doctest::Approx(quad.ratio).epsilon(0.1));
}

TEST_CASE("steps that leave the disc are reported") {
  try {
    simulate_exit(config(ModelSurface::disc(), 0.1, 1.0, 2000), {}, 1);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooCoarse);
  }
}
