#include "nevlab/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nevlab/error.hpp"
#include "nevlab/parallel.hpp"

namespace nevlab {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEVLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "Gauss rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  cache.emplace(n, rule);
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order, int panels) {
  const GaussRule rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(order * panels));
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < order; ++k) terms.push_back(0.5 * h * rule.weights(k) * f(mid + 0.5 * h * rule.nodes(k)));
  }
  return pairwise_sum(terms);
}

double circle_mean(const std::function<double(double)>& f_of_theta, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "need at least one circle node");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = f_of_theta(2.0 * std::numbers::pi * k / n);
  return pairwise_sum(v) / n;
}

}  // namespace nevlab
