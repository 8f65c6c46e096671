#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nevlab/surfaces.hpp"

namespace nevlab {

using PointFn = std::function<double(std::complex<double>)>;

struct PathConfig {
  ModelSurface surface;
  double radius = 1.0;  // geodesic
  double dt = 1e-4;
  std::uint64_t master_seed = 0;
  std::size_t n_paths = 10000;
};

struct Integrand {
  std::string name;
  PointFn fn;
};

/// Per-path results, indexed by path number.
struct ExitStats {
  std::vector<double> tau;
  std::vector<std::complex<double>> exit_points;
  std::vector<std::string> names;
  std::vector<std::vector<double>> functionals;  // [integrand][path] = int_0^tau phi(X_t) dt
  std::size_t coarse_paths = 0;                   // raw overshoot above 10 sqrt(dt)
  double max_overshoot = 0.0;                     // geodesic, before projection

  std::size_t size() const { return tau.size(); }
  const std::vector<double>& functional(const std::string& name) const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;
};

/// Sample mean, variance and standard error with order-fixed pairwise sums.
Estimate estimate(std::span<const double> samples);

/// SplitMix64 finaliser applied to master_seed + (index + 1) * golden gamma:
/// the per-path seed of std::mt19937_64.
std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path_index);

/// Euler-Maruyama for dZ = lambda(Z)^{-1/2} dB in the conformal coordinate,
/// started at 0, stopped at the geodesic circle of radius r. A step that
/// stays inside still counts as an exit with the Brownian-bridge crossing
/// probability exp(-2 d0 d1 / (sigma^2 dt)); crossing instants are linearly
/// interpolated and exit points projected radially onto the circle. Path
/// integrals use the trapezoid rule in time.
/// Bit-identical for any thread count. Errors: StepTooCoarse (> 1% of paths).
ExitStats simulate_exit(const PathConfig& cfg, const std::vector<Integrand>& integrands, int threads = 1);

struct Comparison {
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;
  /// |estimate - reference| <= sigmas * std_error
  bool within(double sigmas = 3.0) const;
  double z_score() const;
};

struct ExitTimeBound {
  Estimate tau;
  double bound = 0.0;  // 4 r^2
  bool holds() const { return tau.mean + 3.0 * tau.std_error <= bound; }
};

/// mean(tau) + 3 SE <= 4 r^2. Needs at least 1e4 paths.
ExitTimeBound check_exit_time_bound(const ExitStats& stats, double r);

/// Kolmogorov-Smirnov distance of samples in [0,1) from the uniform law.
double ks_uniform_statistic(std::vector<double> u);

struct UniformityTest {
  double statistic = 0.0;
  double critical = 0.0;  // 1% level, asymptotic 1.6276 / sqrt(n)
  bool passes() const { return statistic <= critical; }
};

UniformityTest exit_angle_uniformity(const ExitStats& stats);

/// int g_r(o, z) phi(z) dV over the geodesic ball, dV = lambda dA.
double coarea_integral(const ModelSurface& s, double r, const PointFn& phi, int order = 24, int panels = 8,
                       int angles = 64);

/// Harmonic-measure mean of psi over the geodesic circle of radius r.
double boundary_mean(const ModelSurface& s, double r, const PointFn& psi, int nodes = 256);

struct DynkinReport {
  Estimate lhs;         // u(X_tau) - u(o)
  Estimate rhs;         // (1/2) int_0^tau Delta_S u dt
  Estimate difference;  // per-path lhs - rhs
  bool holds(double sigmas = 3.0) const;
};

/// Both sides from the same paths; `half_laplacian` names the integrand
/// holding (1/2) Delta_S u.
DynkinReport dynkin_from_stats(const ExitStats& stats, const PointFn& u, const std::string& half_laplacian);

/// Simulates with (1/2) Delta_S u = (1/2) lambda^{-1} Delta u; `laplacian` is
/// the flat Laplacian of u in the coordinate.
DynkinReport check_dynkin(const PathConfig& cfg, const PointFn& u, const PointFn& laplacian, int threads = 1);

struct CalculusLemmaRow {
  double r = 0.0;
  double lhs = 0.0;         // E[k(X_tau)]
  double occupation = 0.0;  // E[int_0^tau k dt]
  double khat = 0.0;        // log r * occupation
  double F = 0.0;
  double rhs = 0.0;         // F e^{r sqrt(-kappa)} log r * occupation / (2 pi), C = 1
  double ratio = 0.0;       // lhs / rhs (0 when both vanish, inf when only rhs does)
};

double calculus_lemma_F(double khat, double r, double kappa, double delta);

/// Quadrature form: harmonic measure for the left side, co-area for the
/// occupation integral.
std::vector<CalculusLemmaRow> calculus_lemma_ratio(const ModelSurface& s, const PointFn& k, double delta,
                                                   const std::vector<double>& radii);

/// Monte Carlo form at cfg.radius.
CalculusLemmaRow calculus_lemma_ratio_mc(const PathConfig& cfg, const PointFn& k, double delta, int threads = 1);

}  // namespace nevlab
