#pragma once

#include <fsnap/hamiltonians.hpp>
#include <fsnap/linalg.hpp>
#include <fsnap/units.hpp>

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace fsnap {

// Time-periodic Hamiltonian H(t) = h0 + eps * cos(omega_d * t) * drive_op.
struct FloquetSystem {
  Eigen::MatrixXcd h0;
  Eigen::MatrixXcd drive_op;
  double eps = 0.0;
  double omega_d = kTwoPi;
  Dims dims{1, 1};

  double period() const { return kTwoPi / omega_d; }
  Eigen::MatrixXcd at(double t) const;
};

// Commutator-free fourth-order Magnus propagator over [t0, t1] with a fixed
// substep count. Exact (up to roundoff) for a time-independent generator.
Eigen::MatrixXcd cf4_propagator(const std::function<Eigen::MatrixXcd(double)>& h_of_t,
                                double t0, double t1, int substeps);
Eigen::MatrixXcd cf4_propagator(const FloquetSystem& sys, double t0, double t1, int substeps);

// 512 steps/period keeps the halving test below 1e-9 at the reference work
// point; 256 leaves it at 1.3e-9.
inline constexpr int kDefaultSubstepsPerPeriod = 512;
inline constexpr int kDefaultModeGridSize = 128;

Eigen::MatrixXcd monodromy(const FloquetSystem& sys, int substeps = kDefaultSubstepsPerPeriod);
Eigen::MatrixXcd monodromy(const Eigen::MatrixXcd& h_static, const Eigen::MatrixXcd& drive_op,
                           double eps, double omega_d, int substeps = kDefaultSubstepsPerPeriod);

struct DecomposeOptions {
  int substeps = kDefaultSubstepsPerPeriod;
  int n_grid = kDefaultModeGridSize;  // 0 disables the mode/propagator grids
  double degeneracy_tol = 1e-10;      // circular quasienergy distance, rad/ns
  double unitarity_tol = 1e-9;
};

struct FloquetModes {
  double omega_d = kTwoPi;
  double eps = 0.0;
  Dims dims{1, 1};
  Eigen::VectorXd quasienergies;  // folded into [0, omega_d), ascending
  Eigen::MatrixXcd modes0;        // column j: mode j at t = 0
  std::vector<StateLabel> labels;
  std::vector<double> overlaps;  // squared overlap with the assigned static eigenstate
  std::vector<bool> ambiguous;   // overlap <= 0.5
  std::vector<bool> degenerate;  // within degeneracy_tol of another quasienergy
  int n_grid = 0;
  std::vector<Eigen::MatrixXcd> prop_grid;  // U(g T / n_grid, 0)
  std::vector<Eigen::MatrixXcd> mode_grid;  // mode columns at g T / n_grid

  double period() const { return kTwoPi / omega_d; }
  int find(int m, int n) const;            // -1 when absent
  double quasienergy(int m, int n) const;  // throws std::out_of_range when absent
};

FloquetModes decompose(const FloquetSystem& sys, const DecomposeOptions& opt = {});

// U(tau, 0) for tau reduced mod T, from the stored propagator grid plus one
// refinement substep; requires a decomposition with grids.
Eigen::MatrixXcd partial_period_propagator(const FloquetSystem& sys, const FloquetModes& modes,
                                           double tau);
// Mode columns at arbitrary tau (reduced mod T).
Eigen::MatrixXcd modes_at(const FloquetSystem& sys, const FloquetModes& modes, double tau);

// Harmonic tables O^(k)_ij = (1/T) \int_0^T e^{-i k w_d t} <mode_i(t)|op|mode_j(t)> dt,
// evaluated by the periodic trapezoidal rule on the stored mode grid.
struct FourierTable {
  int k_lo = 0;
  int k_hi = 0;
  std::vector<Eigen::MatrixXcd> coeff;

  bool has(int k) const { return k >= k_lo && k <= k_hi; }
  const Eigen::MatrixXcd& at(int k) const;
};

FourierTable fourier_tables(const FloquetModes& modes, const Eigen::MatrixXcd& op, int k_lo,
                            int k_hi);

struct FloquetMatrixElement {
  StateLabel from{0, 0};  // ket state
  StateLabel to{0, 0};    // bra state
  int from_index = 0;
  int to_index = 0;
  cxd value;  // dominant harmonic of <to(t)|op|from(t)>
  int k_max = 0;
  double transition_freq = 0.0;  // eps_from - eps_to - k_max * omega_d
};

struct MatrixElementOptions {
  int k_window = 4;  // search |k| <= k_window, widened automatically
  int k_window_cap = 16;
  double threshold = 0.0;  // keep entries with |value| > threshold
};

std::vector<FloquetMatrixElement> matrix_elements(const FloquetModes& modes,
                                                  const Eigen::MatrixXcd& op,
                                                  const MatrixElementOptions& opt = {});

struct DispersiveSweepPoint {
  double omega_d = 0.0;
  std::vector<double> delta_omega_q;  // drive-induced ancilla shift at each photon number
  double chi_d = 0.0;                 // driven dispersive shift
  bool valid = true;
};

struct DispersiveSweepOptions {
  int n_max = 4;
  int substeps = kDefaultSubstepsPerPeriod;
  int threads = 1;
};

std::vector<DispersiveSweepPoint> dispersive_shift_sweep(const SystemParams& params, double eps,
                                                         const std::vector<double>& omega_d_grid,
                                                         const DispersiveSweepOptions& opt = {});

// |<static partner|mode tracked as branch>| along a drive-frequency sweep.
std::vector<std::pair<double, double>> sideband_overlap_curve(
    const SystemParams& params, double eps, const std::vector<double>& omega_d_grid,
    StateLabel branch, StateLabel partner, int substeps = kDefaultSubstepsPerPeriod,
    int threads = 1);

// Two-state mixing amplitude sin(theta/2), theta = atan2(|omega|, delta).
double sideband_overlap_model(double omega, double delta);

struct SidebandFit {
  double omega = 0.0;      // sideband rate amp*width: the asymptotic 2*delta*overlap, rad/ns
  double width = 0.0;      // mixing-curve width = avoided-crossing gap at zero detuning, rad/ns
  double amp = 1.0;        // saturation amplitude, <1 when drive dressing dilutes the pair
  double omega_res = 0.0;  // zero-detuning drive frequency, rad/ns
  double rms_residual = 0.0;
  bool converged = false;

  double detuning(double omega_d) const { return omega_res - omega_d; }
};

// Least-squares fit of an overlap curve (omega_d, overlap) to
// amp * sin(atan2(width, omega_res - omega_d) / 2). A computed curve saturates
// at the dressed-state overlap amp rather than 1; the rate that matches the
// far-detuned tails (and the perturbative formulas) is then amp*width, stored
// as omega. Throws when the fit fails or the residual exceeds max_rms.
SidebandFit fit_sideband_params(const std::vector<std::pair<double, double>>& curve,
                                double max_rms = 0.02);

}  // namespace fsnap
