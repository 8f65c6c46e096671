#include "nevlab/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

// a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0: exact second derivatives.
struct HyperDual {
  double a = 0, b = 0, c = 0, d = 0;
};

HyperDual operator+(HyperDual x, HyperDual y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
HyperDual operator-(HyperDual x, HyperDual y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
HyperDual operator*(HyperDual x, HyperDual y) {
  return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a, x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
}
HyperDual operator*(double s, HyperDual x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
HyperDual constant(double v) { return {v, 0, 0, 0}; }

HyperDual apply(HyperDual x, double f, double f1, double f2) {
  return {f, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}
HyperDual log(HyperDual x) { return apply(x, std::log(x.a), 1.0 / x.a, -1.0 / (x.a * x.a)); }

HyperDual log_density(SurfaceKind kind, HyperDual x, HyperDual y) {
  if (kind == SurfaceKind::EuclideanPlane) return constant(0.0);
  const HyperDual s = constant(1.0) - (x * x + y * y);
  return constant(std::log(2.0)) - 2.0 * log(s);
}

}  // namespace

ModelSurface ModelSurface::from_name(const std::string& name) {
  if (name == "plane") return plane();
  if (name == "disc") return disc();
  throw Error(ErrorCode::InvalidInput, "unknown surface '" + name + "' (expected plane or disc)");
}

std::string ModelSurface::name() const { return kind_ == SurfaceKind::EuclideanPlane ? "plane" : "disc"; }

bool ModelSurface::in_domain(std::complex<double> z) const {
  return kind_ == SurfaceKind::EuclideanPlane || std::norm(z) < 1.0;
}

double ModelSurface::metric_density(std::complex<double> z) const {
  if (kind_ == SurfaceKind::EuclideanPlane) return 1.0;
  if (!in_domain(z)) throw Error(ErrorCode::OutsideDomain, "point outside the unit disc");
  const double s = 1.0 - std::norm(z);
  return 2.0 / (s * s);
}

double ModelSurface::conformal_factor(std::complex<double> z) const {
  return kind_ == SurfaceKind::EuclideanPlane ? 1.0 : 2.0 * metric_density(z);
}

double ModelSurface::gauss_curvature(std::complex<double> z) const {
  if (!in_domain(z)) throw Error(ErrorCode::OutsideDomain, "point outside the unit disc");
  // d^2/dz dzbar = (d_xx + d_yy) / 4
  const HyperDual xx = log_density(kind_, {z.real(), 1, 1, 0}, constant(z.imag()));
  const HyperDual yy = log_density(kind_, constant(z.real()), {z.imag(), 1, 1, 0});
  return -(xx.d + yy.d) / (4.0 * metric_density(z));
}

double ModelSurface::geodesic_radius(std::complex<double> z) const {
  const double a = std::abs(z);
  if (kind_ == SurfaceKind::EuclideanPlane) return a;
  if (a >= 1.0) throw Error(ErrorCode::OutsideDomain, "point outside the unit disc");
  return 2.0 * std::atanh(a);
}

double ModelSurface::coordinate_radius(double r) const {
  return kind_ == SurfaceKind::EuclideanPlane ? r : std::tanh(r / 2.0);
}

double ModelSurface::green_kernel(double r, std::complex<double> z) const {
  const double a = std::abs(z);
  if (a == 0.0) throw Error(ErrorCode::AtPole, "Green kernel evaluated at the pole");
  if (!in_domain(z) || geodesic_radius(z) >= r) throw Error(ErrorCode::OutsideBall, "point outside the geodesic ball");
  return std::log(coordinate_radius(r) / a) / std::numbers::pi;
}

double ModelSurface::harmonic_measure_density(double r) const {
  if (!(r > 0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
  return 0.5 / std::numbers::pi;
}

KappaProfile KappaProfile::constant(double c) {
  if (!(c <= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "kappa must be finite and <= 0");
  KappaProfile k;
  k.knots_ = {{0.0, c}};
  return k;
}

KappaProfile KappaProfile::piecewise(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw Error(ErrorCode::InvalidInput, "kappa profile needs at least one knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [t, v] = knots[i];
    if (!std::isfinite(t) || !std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite kappa knot");
    if (v > 0.0) throw Error(ErrorCode::InvalidInput, "kappa knot " + std::to_string(i) + " is positive");
    if (i > 0 && !(t > knots[i - 1].first))
      throw Error(ErrorCode::InvalidInput, "kappa knots must have increasing t");
    if (i > 0 && v > knots[i - 1].second)
      throw Error(ErrorCode::InvalidInput, "kappa must be non-increasing (knot " + std::to_string(i) + ")");
  }
  KappaProfile k;
  k.knots_ = std::move(knots);
  return k;
}

double KappaProfile::operator()(double t) const {
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, const auto& k) { return v < k.first; });
  const auto& [t1, k1] = *it;
  const auto& [t0, k0] = *(it - 1);
  return k0 + (k1 - k0) * (t - t0) / (t1 - t0);
}

JacobiSolution solve_jacobi(const KappaProfile& kappa, double r_max, double step) {
  if (!(step > 0)) throw Error(ErrorCode::InvalidInput, "step must be positive");
  if (!(r_max > 0)) throw Error(ErrorCode::InvalidInput, "r_max must be positive");
  const auto steps = static_cast<Eigen::Index>(std::ceil(r_max / step - 1e-9));
  JacobiSolution s;
  s.t.resize(steps + 1);
  s.G.resize(steps + 1);
  s.Gprime.resize(steps + 1);
  s.t(0) = 0.0;
  s.G(0) = 0.0;
  s.Gprime(0) = 1.0;
  Eigen::Vector2d y(0.0, 1.0);
  auto rhs = [&](double t, const Eigen::Vector2d& v) { return Eigen::Vector2d(v(1), -kappa(t) * v(0)); };
  for (Eigen::Index i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * step;
    const double h = std::min(step, r_max - t);
    const Eigen::Vector2d k1 = rhs(t, y);
    const Eigen::Vector2d k2 = rhs(t + h / 2, y + h / 2 * k1);
    const Eigen::Vector2d k3 = rhs(t + h / 2, y + h / 2 * k2);
    const Eigen::Vector2d k4 = rhs(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    s.t(i + 1) = t + h;
    s.G(i + 1) = y(0);
    s.Gprime(i + 1) = y(1);
  }
  return s;
}

JacobiBoundReport check_jacobi_bounds(const JacobiSolution& sol, const KappaProfile& kappa, double tol) {
  JacobiBoundReport rep;
  // int_1^t (1/G - 1/s) ds by the trapezoid rule; <= 0 exactly when G >= s,
  // so the comparison does not inherit the quadrature error of log t.
  double integral = 0.0;
  auto h = [&](Eigen::Index i) { return 1.0 / sol.G(i) - 1.0 / sol.t(i); };
  for (Eigen::Index i = 1; i < sol.t.size(); ++i) {
    const double t = sol.t(i), g = sol.G(i);
    bool bad = false;
    const double lower = (t - g) / std::max(1.0, t);
    rep.lower_violation = std::max(rep.lower_violation, lower);
    bad = bad || lower > tol;

    const double t0 = sol.t(i - 1);
    if (t > 1.0) {
      if (t0 >= 1.0) {
        integral += 0.5 * (t - t0) * (h(i - 1) + h(i));
      } else {
        const double w = (1.0 - t0) / (t - t0);
        const double h0 = t0 > 0.0 ? h(i - 1) : h(i);
        const double h1 = (1.0 - w) * h0 + w * h(i);
        integral += 0.5 * (t - 1.0) * (h1 + h(i));
      }
      rep.integral_violation = std::max(rep.integral_violation, integral);
      bad = bad || integral > tol;
    }

    const double ub = t * std::exp(t * std::sqrt(-kappa(t)));
    const double upper = (g - ub) / ub;
    rep.upper_violation = std::max(rep.upper_violation, upper);
    bad = bad || upper > tol;
    if (bad) ++rep.violations;
  }
  return rep;
}

}  // namespace nevlab
