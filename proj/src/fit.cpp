#include "nevlab/fit.hpp"

#include <vector>

#include <Eigen/QR>

#include "nevlab/error.hpp"

namespace nevlab {

namespace {

Eigen::VectorXd solve_on(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  if (cols.empty()) return Eigen::VectorXd::Zero(a.cols());
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
  const Eigen::VectorXd y = sub.colPivHouseholderQr().solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = y(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  if (a.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "nnls: rows of A differ from size of b");
  const Eigen::Index n = a.cols();
  const double tol = 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()) * (1.0 + b.cwiseAbs().maxCoeff());
  NnlsResult r;
  r.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  for (; r.iterations < max_iterations; ++r.iterations) {
    const Eigen::VectorXd w = a.transpose() * (b - a * r.x);
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w(j) > tol && (best < 0 || w(j) > w(best))) best = j;
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    for (;;) {
      const Eigen::VectorXd z = solve_on(a, b, passive);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0) {
          feasible = false;
          alpha = std::min(alpha, r.x(j) / (r.x(j) - z(j)));
        }
      if (feasible) {
        r.x = z;
        break;
      }
      r.x += alpha * (z - r.x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && r.x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          r.x(j) = 0.0;
        }
    }
  }
  r.residual = b - a * r.x;
  return r;
}

}  // namespace nevlab
