#pragma once

#include <Eigen/Core>

namespace nevlab {

struct NnlsResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;  // b - A x
  int iterations = 0;
};

/// min ||A x - b|| subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 500);

}  // namespace nevlab
