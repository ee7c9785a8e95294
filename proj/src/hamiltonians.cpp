#include "fsnap/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

#include "fsnap/linalg.hpp"

namespace fsnap {

namespace {

double cos_nl_scalar(double x) {
  if (std::abs(x) < 1.0) {
    double u = x * x;
    return u * u / 24.0 * (1.0 - u / 30.0 * (1.0 - u / 56.0 * (1.0 - u / 90.0 * (1.0 - u / 132.0))));
  }
  return std::cos(x) - 1.0 + 0.5 * x * x;
}

}  // namespace

MatrixXcd cos_nl(const MatrixXcd& x) {
  if (hermiticity_error(x) > 1e-10)
    throw std::invalid_argument("cos_nl expects a Hermitian argument");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(x);
  VectorXd f(x.rows());
  for (int i = 0; i < x.rows(); ++i) f(i) = cos_nl_scalar(es.eigenvalues()(i));
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd build_bbq_hamiltonian(const SystemParams& p) {
  if (p.dims.n_anc < 4)
    throw std::invalid_argument("ancilla truncation must keep at least levels g,e,f,h");
  if (p.dims.n_cav < 1) throw std::invalid_argument("cavity truncation must be positive");
  const MatrixXcd q = ancilla_destroy(p.dims);
  const MatrixXcd c = cavity_destroy(p.dims);
  MatrixXcd phase = p.phi_q * (q + q.adjoint()) + p.phi_c * (c + c.adjoint());
  MatrixXcd h = p.omega_c * cavity_number(p.dims) + p.omega_q * ancilla_number(p.dims)
                - p.ej * cos_nl(phase);
  return h;
}

MatrixXcd build_jc_hamiltonian(const JcParams& p) {
  const MatrixXcd q = ancilla_destroy(p.dims);
  const MatrixXcd c = cavity_destroy(p.dims);
  const MatrixXcd qd = q.adjoint(), cd = c.adjoint();
  return p.omega_c * cavity_number(p.dims) + p.omega_q * ancilla_number(p.dims)
         + 0.5 * p.alpha * (qd * qd * q * q).eval()
         + p.g * ((cd + c) * (qd + q)).eval();
}

std::string label_name(const StateLabel& l) {
  static const char* anc = "gefh";
  std::string s;
  if (l.m >= 0 && l.m < 4) s += anc[l.m];
  else s += "a" + std::to_string(l.m);
  s += std::to_string(l.n);
  return s;
}

int LabeledEigensystem::find(int m, int n) const {
  for (size_t j = 0; j < labels.size(); ++j)
    if (labels[j].m == m && labels[j].n == n) return int(j);
  return -1;
}

double LabeledEigensystem::energy(int m, int n) const {
  int j = find(m, n);
  if (j < 0) throw std::out_of_range("no eigenstate labeled (" + std::to_string(m) + "," +
                                     std::to_string(n) + ")");
  return energies(j);
}

LabeledEigensystem label_eigensystem(const MatrixXcd& h, const Dims& dims) {
  if (h.rows() != dims.total())
    throw std::invalid_argument("hamiltonian dimension does not match dims");
  if (hermiticity_error(h) > 1e-9)
    throw std::invalid_argument("label_eigensystem expects a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  const int n = dims.total();
  // cost = -|<bare_i|dressed_j>|^2, globally matched
  MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = -std::norm(es.eigenvectors()(i, j));
  std::vector<int> bare_to_col = min_cost_assignment(cost);

  LabeledEigensystem out;
  out.energies = es.eigenvalues();
  out.states = es.eigenvectors();
  out.labels.resize(n);
  out.overlaps.resize(n);
  out.ambiguous.resize(n);
  out.dims = dims;
  for (int i = 0; i < n; ++i) {
    int j = bare_to_col[i];
    out.labels[j] = {dims.anc_of(i), dims.cav_of(i)};
    out.overlaps[j] = -cost(i, j);
    out.ambiguous[j] = out.overlaps[j] <= 0.5;
  }
  return out;
}

DressedParams dressed_parameters(const LabeledEigensystem& es) {
  for (auto [m, n] : {std::pair{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}) {
    int j = es.find(m, n);
    if (j < 0) throw std::runtime_error("dressed_parameters: missing state (" +
                                        std::to_string(m) + "," + std::to_string(n) + ")");
    if (es.ambiguous[j])
      throw std::runtime_error("dressed_parameters: ambiguous label " +
                               label_name(es.labels[j]));
  }
  DressedParams dp;
  const double e00 = es.energy(0, 0);
  dp.omega_q = es.energy(1, 0) - e00;
  dp.omega_c = es.energy(0, 1) - e00;
  dp.alpha = es.energy(2, 0) - 2.0 * es.energy(1, 0) + e00;
  dp.chi0 = es.energy(1, 1) - es.energy(1, 0) - es.energy(0, 1) + e00;
  dp.delta = dp.omega_q - dp.omega_c;
  return dp;
}

double effective_jc_coupling(const DressedParams& dp, const SystemParams& p) {
  if (p.phi_q == 0.0) throw std::invalid_argument("phi_q must be nonzero");
  return dp.delta * p.phi_c / p.phi_q;
}

}  // namespace fsnap
