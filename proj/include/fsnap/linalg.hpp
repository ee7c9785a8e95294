#pragma once
#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fsnap/units.hpp"

namespace fsnap {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// exp(-i t K) for Hermitian K, via eigendecomposition.
MatrixXcd expm_hermitian_prop(const MatrixXcd& k, double t);

// exp(A) for a general square matrix (scaling and squaring, Taylor kernel).
MatrixXcd expm_general(const MatrixXcd& a);

// y <- exp(A) y without forming exp(A); A any square matrix with moderate norm.
void expm_apply(const MatrixXcd& a, MatrixXcd& y);

// Minimum-cost perfect assignment on a square cost matrix; returns col of each row.
std::vector<int> min_cost_assignment(const MatrixXd& cost);

// Levenberg-Marquardt least squares with forward-difference Jacobian.
struct FitResult {
  VectorXd params;
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};
FitResult fit_least_squares(const std::function<VectorXd(const VectorXd&)>& residual,
                            const VectorXd& initial, int max_iter = 200,
                            double tol = 1e-12);

// Deterministic static-partition parallel loop over [0, n).
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace fsnap
