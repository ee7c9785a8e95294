#pragma once
#include <string>
#include <vector>

#include "fsnap/operators.hpp"

namespace fsnap {

// Cavity-transmon system with the junction cosine expanded beyond quadratic
// order; the quadratic part is absorbed into the normal-mode frequencies.
struct SystemParams {
  double omega_c = 0.0;  // bare cavity normal mode, rad/ns
  double omega_q = 0.0;  // bare ancilla normal mode, rad/ns
  double ej = 0.0;       // junction energy, rad/ns
  double phi_c = 0.0;    // cavity zero-point phase participation
  double phi_q = 0.0;    // ancilla zero-point phase participation
  Dims dims;
};

// cos(x) - 1 + x^2/2 of a Hermitian matrix, evaluated by eigendecomposition.
MatrixXcd cos_nl(const MatrixXcd& x);

MatrixXcd build_bbq_hamiltonian(const SystemParams& p);

// Transmon-cavity model with explicit bilinear coupling, used for the
// inverse-Purcell study and as an independent cross-check of dispersive shifts.
struct JcParams {
  double omega_c = 0.0;
  double omega_q = 0.0;
  double alpha = 0.0;
  double g = 0.0;
  Dims dims;
};
MatrixXcd build_jc_hamiltonian(const JcParams& p);

struct StateLabel {
  int m = -1;  // ancilla level (0=g, 1=e, 2=f, 3=h)
  int n = -1;  // cavity photon number
  bool operator==(const StateLabel&) const = default;
};
std::string label_name(const StateLabel& l);

// Eigensystem with each eigenvector assigned a bare product-state label by
// globally optimal overlap matching.
struct LabeledEigensystem {
  VectorXd energies;              // ascending
  MatrixXcd states;               // columns, same order as energies
  std::vector<StateLabel> labels; // per column
  std::vector<double> overlaps;   // |<bare|dressed>|^2 of the assignment
  std::vector<bool> ambiguous;    // true when overlap <= 0.5
  Dims dims;

  int find(int m, int n) const;   // column with label (m,n), -1 if none
  double energy(int m, int n) const;
};

LabeledEigensystem label_eigensystem(const MatrixXcd& h, const Dims& dims);

struct DressedParams {
  double omega_q = 0.0;  // E(e,0) - E(g,0)
  double omega_c = 0.0;  // E(g,1) - E(g,0)
  double alpha = 0.0;    // E(f,0) - 2 E(e,0) + E(g,0)
  double chi0 = 0.0;     // [E(e,1)-E(e,0)] - [E(g,1)-E(g,0)], signed
  double delta = 0.0;    // omega_q - omega_c
};

DressedParams dressed_parameters(const LabeledEigensystem& es);

// Hybridization-equivalent bilinear coupling of the normal-mode description,
// g = delta * phi_c / phi_q, feeding the closed-form sideband expressions.
double effective_jc_coupling(const DressedParams& dp, const SystemParams& p);

}  // namespace fsnap
