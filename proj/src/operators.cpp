#include "fsnap/operators.hpp"

#include <cmath>

namespace fsnap {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd destroy(int dim) {
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

MatrixXcd ancilla_destroy(const Dims& d) {
  return kron(destroy(d.n_anc), MatrixXcd::Identity(d.n_cav, d.n_cav));
}

MatrixXcd cavity_destroy(const Dims& d) {
  return kron(MatrixXcd::Identity(d.n_anc, d.n_anc), destroy(d.n_cav));
}

MatrixXcd ancilla_number(const Dims& d) {
  MatrixXcd n = MatrixXcd::Zero(d.n_anc, d.n_anc);
  for (int m = 0; m < d.n_anc; ++m) n(m, m) = m;
  return kron(n, MatrixXcd::Identity(d.n_cav, d.n_cav));
}

MatrixXcd cavity_number(const Dims& d) {
  MatrixXcd n = MatrixXcd::Zero(d.n_cav, d.n_cav);
  for (int m = 0; m < d.n_cav; ++m) n(m, m) = m;
  return kron(MatrixXcd::Identity(d.n_anc, d.n_anc), n);
}

double hermiticity_error(const MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const MatrixXcd& m, double tol) {
  return hermiticity_error(m) <= tol;
}

MatrixXcd partial_trace_ancilla(const MatrixXcd& rho, const Dims& d) {
  MatrixXcd out = MatrixXcd::Zero(d.n_cav, d.n_cav);
  for (int m = 0; m < d.n_anc; ++m)
    out += rho.block(m * d.n_cav, m * d.n_cav, d.n_cav, d.n_cav);
  return out;
}

}  // namespace fsnap
