#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Core>

namespace nevlab {

/// Pairwise summation in index order; the result depends only on the input
/// order, never on how the values were produced.
double pairwise_sum(std::span<const double> v);

struct GaussRule {
  Eigen::VectorXd nodes;    // on [-1, 1]
  Eigen::VectorXd weights;
};

/// Gauss-Legendre rule by the Golub-Welsch eigenvalue method.
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int order = 20, int panels = 8);

/// (1/2pi) int_0^{2pi} f(R e^{i theta}) d theta by the n-node periodic trapezoid
/// rule, theta_k = 2 pi k / n.
double circle_mean(const std::function<double(double)>& f_of_theta, int n);

}  // namespace nevlab
