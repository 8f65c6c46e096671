#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace nevlab {

enum class SurfaceKind { EuclideanPlane, PoincareDisc };

/// Flat plane or Poincare disc, both in the global conformal coordinate z
/// with base point o = 0. Kernels and measures are for the generator Delta/2.
class ModelSurface {
 public:
  explicit ModelSurface(SurfaceKind kind = SurfaceKind::EuclideanPlane) : kind_(kind) {}
  static ModelSurface plane() { return ModelSurface(SurfaceKind::EuclideanPlane); }
  static ModelSurface disc() { return ModelSurface(SurfaceKind::PoincareDisc); }
  /// "plane" or "disc"; throws InvalidInput otherwise.
  static ModelSurface from_name(const std::string& name);

  SurfaceKind kind() const { return kind_; }
  std::string name() const;

  /// g: 1 on C, 2/(1-|z|^2)^2 on D.
  double metric_density(std::complex<double> z) const;
  /// Riemannian conformal factor lambda (ds^2 = lambda |dz|^2); lambda = 2g on D.
  double conformal_factor(std::complex<double> z) const;
  /// -(1/g) d^2 log g / dz dzbar, by second-order forward-mode differentiation.
  double gauss_curvature(std::complex<double> z) const;
  /// Constant curvature bound kappa: 0 or -1.
  double kappa() const { return kind_ == SurfaceKind::EuclideanPlane ? 0.0 : -1.0; }

  bool in_domain(std::complex<double> z) const;
  /// Distance from 0; OutsideDomain off the disc.
  double geodesic_radius(std::complex<double> z) const;
  /// |z| of the geodesic circle of radius r.
  double coordinate_radius(double r) const;

  /// g_r(o, z) = (1/pi) log(R/|z|), R = coordinate_radius(r). Errors: OutsideBall, AtPole.
  double green_kernel(double r, std::complex<double> z) const;
  /// Exit distribution from the centre: 1/(2 pi) in angle.
  double harmonic_measure_density(double r) const;

 private:
  SurfaceKind kind_;
};

/// Non-positive, non-increasing, continuous curvature bound kappa(t).
class KappaProfile {
 public:
  static KappaProfile constant(double c);
  /// Knots (t, kappa) with strictly increasing t; held constant outside.
  static KappaProfile piecewise(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;
  bool is_constant() const { return knots_.size() == 1; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// G'' + kappa G = 0, G(0) = 0, G'(0) = 1.
struct JacobiSolution {
  Eigen::VectorXd t;
  Eigen::VectorXd G;
  Eigen::VectorXd Gprime;
};

/// Classical RK4 with fixed step (last step shortened to land on r_max).
JacobiSolution solve_jacobi(const KappaProfile& kappa, double r_max, double step);

struct JacobiBoundReport {
  double lower_violation = 0.0;     // max (t - G(t))^+
  double integral_violation = 0.0;  // max (int_1^t ds/G - log t)^+
  double upper_violation = 0.0;     // max (G(t) - t e^{t sqrt(-kappa(t))})^+, relative
  int violations = 0;               // grid points breaking any bound beyond tolerance
  bool holds() const { return violations == 0; }
};

/// G >= t, int_1^t ds/G <= log t (t >= 1), G <= t exp(t sqrt(-kappa(t))).
JacobiBoundReport check_jacobi_bounds(const JacobiSolution& sol, const KappaProfile& kappa, double tol = 1e-10);

}  // namespace nevlab
