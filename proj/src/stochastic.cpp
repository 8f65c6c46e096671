#include "nevlab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nevlab/error.hpp"
#include "nevlab/parallel.hpp"
#include "nevlab/quadrature.hpp"

namespace nevlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct PathResult {
  double tau = 0.0;
  std::complex<double> exit;
  double overshoot = 0.0;
};

}  // namespace

const std::vector<double>& ExitStats::functional(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return functionals[k];
  throw Error(ErrorCode::InvalidInput, "no integrand named '" + name + "'");
}

Estimate estimate(std::span<const double> samples) {
  Estimate e;
  const auto n = samples.size();
  if (n == 0) return e;
  e.mean = pairwise_sum(samples) / static_cast<double>(n);
  if (n < 2) return e;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (samples[i] - e.mean) * (samples[i] - e.mean);
  e.variance = pairwise_sum(sq) / static_cast<double>(n - 1);
  e.std_error = std::sqrt(e.variance / static_cast<double>(n));
  return e;
}

std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path_index) {
  std::uint64_t z = master_seed + (path_index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ExitStats simulate_exit(const PathConfig& cfg, const std::vector<Integrand>& integrands, int threads) {
  if (!(cfg.dt > 0)) throw Error(ErrorCode::InvalidInput, "dt must be positive");
  if (!(cfg.radius > 0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
  const bool disc = cfg.surface.kind() == SurfaceKind::PoincareDisc;
  const double R = cfg.surface.coordinate_radius(cfg.radius);
  const double sqdt = std::sqrt(cfg.dt);
  const std::size_t n = cfg.n_paths, m = integrands.size();

  ExitStats st;
  st.tau.resize(n);
  st.exit_points.resize(n);
  for (const auto& it : integrands) st.names.push_back(it.name);
  st.functionals.assign(m, std::vector<double>(n, 0.0));
  std::vector<double> overshoot(n, 0.0);

  parallel_for(n, threads, [&](std::size_t p) {
    std::mt19937_64 gen(path_seed(cfg.master_seed, p));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    std::vector<double> acc(m, 0.0), prev(m);
    std::complex<double> z(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) prev[k] = integrands[k].fn(z);
    double t = 0.0;
    // trapezoid in time from z to `to`
    auto accumulate = [&](std::complex<double> to, double w) {
      for (std::size_t k = 0; k < m; ++k) {
        const double cur = integrands[k].fn(to);
        acc[k] += 0.5 * (prev[k] + cur) * w;
        prev[k] = cur;
      }
    };
    for (;;) {
      const double a0 = std::abs(z);
      const double sigma = disc ? 0.5 * (1.0 - a0 * a0) : 1.0;
      const double n1 = normal(gen), n2 = normal(gen);
      const std::complex<double> dz = sigma * sqdt * std::complex<double>(n1, n2);
      const std::complex<double> zn = z + dz;
      const double a1 = std::abs(zn);
      if (a1 >= R) {
        const double frac = (R - a0) / (a1 - a0);
        const std::complex<double> hit = z + frac * dz;
        st.exit_points[p] = hit * (R / std::abs(hit));
        accumulate(st.exit_points[p], frac * cfg.dt);
        st.tau[p] = t + frac * cfg.dt;
        overshoot[p] = disc ? (a1 >= 1.0 ? std::numeric_limits<double>::infinity()
                                         : cfg.surface.geodesic_radius(zn) - cfg.radius)
                            : a1 - R;
        break;
      }
      const double d0 = R - a0, d1 = R - a1;
      const double e = 2.0 * d0 * d1 / (sigma * sigma * cfg.dt);
      if (e < 40.0 && uniform(gen) < std::exp(-e)) {
        const double frac = d0 / (d0 + d1);
        const std::complex<double> mid = z + frac * dz;
        const double am = std::abs(mid);
        st.exit_points[p] = am > 0 ? mid * (R / am) : std::complex<double>(R, 0.0);
        accumulate(st.exit_points[p], frac * cfg.dt);
        st.tau[p] = t + frac * cfg.dt;
        break;
      }
      accumulate(zn, cfg.dt);
      t += cfg.dt;
      z = zn;
    }
    for (std::size_t k = 0; k < m; ++k) st.functionals[k][p] = acc[k];
  });

  const double limit = 10.0 * sqdt;
  for (double o : overshoot) {
    if (o > limit) ++st.coarse_paths;
    st.max_overshoot = std::max(st.max_overshoot, o);
  }
  if (n > 0 && static_cast<double>(st.coarse_paths) > 0.01 * static_cast<double>(n))
    throw Error(ErrorCode::StepTooCoarse, std::to_string(st.coarse_paths) + " of " + std::to_string(n) +
                                              " paths overshoot the boundary by more than 10 sqrt(dt)");
  return st;
}

bool Comparison::within(double sigmas) const {
  const double d = std::abs(estimate - reference);
  return d <= sigmas * std_error || d <= 1e-12 * (1.0 + std::abs(reference));
}

double Comparison::z_score() const {
  const double d = std::abs(estimate - reference);
  return std_error > 0 ? d / std_error : (d == 0 ? 0.0 : std::numeric_limits<double>::infinity());
}

ExitTimeBound check_exit_time_bound(const ExitStats& stats, double r) {
  if (stats.size() < 10000) throw Error(ErrorCode::InvalidInput, "exit-time bound needs at least 1e4 paths");
  return {estimate(stats.tau), 4.0 * r * r};
}

double ks_uniform_statistic(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = std::clamp(u[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

UniformityTest exit_angle_uniformity(const ExitStats& stats) {
  std::vector<double> u;
  u.reserve(stats.size());
  for (const auto& p : stats.exit_points) {
    double a = std::arg(p);
    if (a < 0) a += 2.0 * kPi;
    u.push_back(a / (2.0 * kPi));
  }
  UniformityTest t;
  t.statistic = ks_uniform_statistic(std::move(u));
  t.critical = 1.6276 / std::sqrt(static_cast<double>(std::max<std::size_t>(1, stats.size())));
  return t;
}

double coarea_integral(const ModelSurface& s, double r, const PointFn& phi, int order, int panels, int angles) {
  const double R = s.coordinate_radius(r);
  // radius rho = R u^2 removes the logarithmic singularity of the kernel at 0
  auto radial = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double rho = R * u * u;
    const double ring = circle_mean([&](double th) { return phi(std::polar(rho, th)); }, angles);
    const double lam = s.conformal_factor(std::complex<double>(rho, 0.0));
    return 2.0 * kPi * ring * lam * (-2.0 * std::log(u) / kPi) * 2.0 * R * R * u * u * u;
  };
  return integrate(radial, 0.0, 1.0, order, panels);
}

double boundary_mean(const ModelSurface& s, double r, const PointFn& psi, int nodes) {
  const double R = s.coordinate_radius(r);
  return circle_mean([&](double th) { return psi(std::polar(R, th)); }, nodes);
}

bool DynkinReport::holds(double sigmas) const {
  return std::abs(difference.mean) <= sigmas * difference.std_error || std::abs(difference.mean) <= 1e-12;
}

DynkinReport dynkin_from_stats(const ExitStats& stats, const PointFn& u, const std::string& half_laplacian) {
  const auto& integral = stats.functional(half_laplacian);
  const double u0 = u(0.0);
  std::vector<double> lhs(stats.size()), diff(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    lhs[i] = u(stats.exit_points[i]) - u0;
    diff[i] = lhs[i] - integral[i];
  }
  return {estimate(lhs), estimate(integral), estimate(diff)};
}

DynkinReport check_dynkin(const PathConfig& cfg, const PointFn& u, const PointFn& laplacian, int threads) {
  const ModelSurface s = cfg.surface;
  std::vector<Integrand> in{{"half_laplacian", [&](std::complex<double> z) {
                               return 0.5 * laplacian(z) / s.conformal_factor(z);
                             }}};
  return dynkin_from_stats(simulate_exit(cfg, in, threads), u, "half_laplacian");
}

double calculus_lemma_F(double khat, double r, double kappa, double delta) {
  const double lk = std::max(0.0, std::log(khat));
  if (lk == 0.0) return 0.0;
  const double inner = r * std::exp(r * std::sqrt(-kappa)) * khat * std::pow(lk, 1.0 + delta);
  return std::pow(lk * std::max(0.0, std::log(inner)), 1.0 + delta);
}

namespace {

CalculusLemmaRow lemma_row(double r, double kappa, double lhs, double occupation, double delta) {
  CalculusLemmaRow row;
  row.r = r;
  row.lhs = lhs;
  row.occupation = occupation;
  row.khat = std::log(r) * occupation;
  row.F = calculus_lemma_F(row.khat, r, kappa, delta);
  row.rhs = row.F * std::exp(r * std::sqrt(-kappa)) * std::log(r) * occupation / (2.0 * kPi);
  if (row.rhs > 0)
    row.ratio = lhs / row.rhs;
  else
    row.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return row;
}

}  // namespace

std::vector<CalculusLemmaRow> calculus_lemma_ratio(const ModelSurface& s, const PointFn& k, double delta,
                                                   const std::vector<double>& radii) {
  std::vector<CalculusLemmaRow> rows;
  for (double r : radii) rows.push_back(lemma_row(r, s.kappa(), boundary_mean(s, r, k), coarea_integral(s, r, k), delta));
  return rows;
}

CalculusLemmaRow calculus_lemma_ratio_mc(const PathConfig& cfg, const PointFn& k, double delta, int threads) {
  const ExitStats st = simulate_exit(cfg, {{"k", k}}, threads);
  std::vector<double> at_exit(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) at_exit[i] = k(st.exit_points[i]);
  return lemma_row(cfg.radius, cfg.surface.kappa(), estimate(at_exit).mean, estimate(st.functional("k")).mean, delta);
}

}  // namespace nevlab
