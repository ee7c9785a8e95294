#pragma once
#include <Eigen/Dense>

#include "fsnap/units.hpp"

namespace fsnap {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Product-space convention: ancilla (dim n_anc) tensor cavity (dim n_cav),
// basis index = m * n_cav + n for ancilla level m and cavity photon number n.
struct Dims {
  int n_anc = 0;
  int n_cav = 0;
  int total() const { return n_anc * n_cav; }
  int index(int m, int n) const { return m * n_cav + n; }
  int anc_of(int idx) const { return idx / n_cav; }
  int cav_of(int idx) const { return idx % n_cav; }
  bool operator==(const Dims&) const = default;
};

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);
MatrixXcd destroy(int dim);

MatrixXcd ancilla_destroy(const Dims& d);
MatrixXcd cavity_destroy(const Dims& d);
MatrixXcd ancilla_number(const Dims& d);
MatrixXcd cavity_number(const Dims& d);

double hermiticity_error(const MatrixXcd& m);
bool is_hermitian(const MatrixXcd& m, double tol = 1e-12);

// Partial trace over the ancilla factor: result is n_cav x n_cav.
MatrixXcd partial_trace_ancilla(const MatrixXcd& rho, const Dims& d);

}  // namespace fsnap
