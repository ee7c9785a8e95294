#include <fsnap/floquet.hpp>

#include <fsnap/operators.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fsnap {

namespace {

constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3)/6
constexpr double kCfInner = 0.25 + kGaussOffset;
constexpr double kCfOuter = 0.25 - kGaussOffset;

Eigen::MatrixXcd cf4_step(const std::function<Eigen::MatrixXcd(double)>& h_of_t, double t,
                          double h) {
  Eigen::MatrixXcd ha = h_of_t(t + (0.5 - kGaussOffset) * h);
  Eigen::MatrixXcd hb = h_of_t(t + (0.5 + kGaussOffset) * h);
  Eigen::MatrixXcd k_first = kCfInner * ha + kCfOuter * hb;
  Eigen::MatrixXcd k_second = kCfOuter * ha + kCfInner * hb;
  return expm_hermitian_prop(k_second, h) * expm_hermitian_prop(k_first, h);
}

double fold_quasienergy(double eps, double omega_d) {
  double folded = eps - omega_d * std::floor(eps / omega_d);
  if (folded >= omega_d) folded -= omega_d;
  if (folded < 0.0) folded += omega_d;
  return folded;
}

double circular_distance(double a, double b, double omega_d) {
  return std::abs(wrap_centered(a - b, omega_d));
}

}  // namespace

Eigen::MatrixXcd FloquetSystem::at(double t) const {
  return h0 + (eps * std::cos(omega_d * t)) * drive_op;
}

Eigen::MatrixXcd cf4_propagator(const std::function<Eigen::MatrixXcd(double)>& h_of_t, double t0,
                                double t1, int substeps) {
  if (substeps < 1) throw std::invalid_argument("cf4_propagator: substeps must be positive");
  const Eigen::Index dim = h_of_t(t0).rows();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  if (t1 == t0) return u;
  const double h = (t1 - t0) / substeps;
  for (int s = 0; s < substeps; ++s) {
    u = cf4_step(h_of_t, t0 + s * h, h) * u;
  }
  return u;
}

Eigen::MatrixXcd cf4_propagator(const FloquetSystem& sys, double t0, double t1, int substeps) {
  return cf4_propagator([&sys](double t) { return sys.at(t); }, t0, t1, substeps);
}

Eigen::MatrixXcd monodromy(const FloquetSystem& sys, int substeps) {
  return cf4_propagator(sys, 0.0, sys.period(), substeps);
}

Eigen::MatrixXcd monodromy(const Eigen::MatrixXcd& h_static, const Eigen::MatrixXcd& drive_op,
                           double eps, double omega_d, int substeps) {
  FloquetSystem sys{h_static, drive_op, eps, omega_d, Dims{1, 1}};
  return monodromy(sys, substeps);
}

int FloquetModes::find(int m, int n) const {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j].m == m && labels[j].n == n) return static_cast<int>(j);
  }
  return -1;
}

double FloquetModes::quasienergy(int m, int n) const {
  int j = find(m, n);
  if (j < 0) throw std::out_of_range("FloquetModes: no mode labeled " + label_name({m, n}));
  return quasienergies(j);
}

FloquetModes decompose(const FloquetSystem& sys, const DecomposeOptions& opt) {
  if (sys.eps < 0.0) throw std::invalid_argument("decompose: drive amplitude must be >= 0");
  if (sys.omega_d <= 0.0) throw std::invalid_argument("decompose: drive frequency must be > 0");
  const Eigen::Index dim = sys.h0.rows();
  const double period = sys.period();

  int n_grid = std::max(opt.n_grid, 0);
  int substeps = std::max(opt.substeps, 1);
  if (n_grid > 0) substeps = n_grid * ((substeps + n_grid - 1) / n_grid);
  const int per_cell = n_grid > 0 ? substeps / n_grid : 0;
  const double h = period / substeps;

  FloquetModes out;
  out.omega_d = sys.omega_d;
  out.eps = sys.eps;
  out.dims = sys.dims;
  out.n_grid = n_grid;

  auto sampler = [&sys](double t) { return sys.at(t); };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  if (n_grid > 0) out.prop_grid.reserve(n_grid);
  for (int s = 0; s < substeps; ++s) {
    if (n_grid > 0 && s % per_cell == 0) out.prop_grid.push_back(u);
    u = cf4_step(sampler, s * h, h) * u;
  }

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  if (schur.info() != Eigen::Success) throw std::runtime_error("decompose: Schur factorization failed");

  Eigen::VectorXd raw(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    cxd lambda = schur.matrixT()(j, j);
    if (std::abs(std::abs(lambda) - 1.0) > opt.unitarity_tol) {
      throw std::runtime_error("decompose: monodromy eigenvalue off the unit circle; integrator did not converge");
    }
    raw(j) = fold_quasienergy(-std::arg(lambda) / period, sys.omega_d);
  }

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&raw](int a, int b) { return raw(a) < raw(b); });

  out.quasienergies.resize(dim);
  out.modes0.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    out.quasienergies(j) = raw(order[j]);
    out.modes0.col(j) = schur.matrixU().col(order[j]);
  }

  // Schur columns of a normal matrix are eigenvectors; verify the residual.
  Eigen::MatrixXcd resid = u * out.modes0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    resid.col(j) -= std::exp(-kI * out.quasienergies(j) * period) * out.modes0.col(j);
  }
  if (resid.cwiseAbs().maxCoeff() > 1e-7) {
    throw std::runtime_error("decompose: monodromy eigenvector residual too large");
  }

  out.degenerate.assign(dim, false);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::Index prev = j == 0 ? dim - 1 : j - 1;
    Eigen::Index next = j + 1 == dim ? 0 : j + 1;
    if (circular_distance(out.quasienergies(j), out.quasienergies(prev), sys.omega_d) <
            opt.degeneracy_tol ||
        circular_distance(out.quasienergies(j), out.quasienergies(next), sys.omega_d) <
            opt.degeneracy_tol) {
      out.degenerate[j] = true;
    }
  }

  LabeledEigensystem statics = label_eigensystem(sys.h0, sys.dims);
  Eigen::MatrixXd cost(dim, dim);
  Eigen::MatrixXcd cross = statics.states.adjoint() * out.modes0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) cost(i, j) = -std::norm(cross(i, j));
  }
  std::vector<int> assign = min_cost_assignment(cost);
  out.labels.resize(dim);
  out.overlaps.resize(dim);
  out.ambiguous.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    int j = assign[i];
    out.labels[j] = statics.labels[i];
    out.overlaps[j] = std::norm(cross(i, j));
    out.ambiguous[j] = out.overlaps[j] <= 0.5;
  }

  if (n_grid > 0) {
    out.mode_grid.resize(n_grid);
    for (int g = 0; g < n_grid; ++g) {
      double tau = g * period / n_grid;
      out.mode_grid[g] = out.prop_grid[g] * out.modes0;
      for (Eigen::Index j = 0; j < dim; ++j) {
        out.mode_grid[g].col(j) *= std::exp(kI * out.quasienergies(j) * tau);
      }
    }
  }
  return out;
}

Eigen::MatrixXcd partial_period_propagator(const FloquetSystem& sys, const FloquetModes& modes,
                                           double tau) {
  if (modes.n_grid <= 0) {
    throw std::invalid_argument("partial_period_propagator: decomposition lacks grids");
  }
  const double period = modes.period();
  double t = tau - period * std::floor(tau / period);
  const double cell = period / modes.n_grid;
  int g = std::min(static_cast<int>(std::floor(t / cell)), modes.n_grid - 1);
  double t_base = g * cell;
  if (t == t_base) return modes.prop_grid[g];
  return cf4_propagator(sys, t_base, t, 1) * modes.prop_grid[g];
}

Eigen::MatrixXcd modes_at(const FloquetSystem& sys, const FloquetModes& modes, double tau) {
  const double period = modes.period();
  double t = tau - period * std::floor(tau / period);
  Eigen::MatrixXcd phi = partial_period_propagator(sys, modes, t) * modes.modes0;
  for (Eigen::Index j = 0; j < phi.cols(); ++j) {
    phi.col(j) *= std::exp(kI * modes.quasienergies(j) * t);
  }
  return phi;
}

const Eigen::MatrixXcd& FourierTable::at(int k) const {
  if (!has(k)) throw std::out_of_range("FourierTable: harmonic index outside the stored window");
  return coeff[static_cast<std::size_t>(k - k_lo)];
}

namespace {

std::vector<Eigen::MatrixXcd> frame_samples(const FloquetModes& modes,
                                            const Eigen::MatrixXcd& op) {
  if (modes.n_grid <= 0 || modes.mode_grid.empty()) {
    throw std::invalid_argument("fourier_tables: decomposition lacks a mode grid");
  }
  std::vector<Eigen::MatrixXcd> samples(modes.n_grid);
  for (int g = 0; g < modes.n_grid; ++g) {
    samples[g] = modes.mode_grid[g].adjoint() * op * modes.mode_grid[g];
  }
  return samples;
}

FourierTable tables_from_samples(const std::vector<Eigen::MatrixXcd>& samples, int k_lo,
                                 int k_hi) {
  if (k_hi < k_lo) throw std::invalid_argument("fourier_tables: empty harmonic window");
  const int n = static_cast<int>(samples.size());
  const Eigen::Index dim = samples.front().rows();
  FourierTable table;
  table.k_lo = k_lo;
  table.k_hi = k_hi;
  table.coeff.assign(k_hi - k_lo + 1, Eigen::MatrixXcd::Zero(dim, dim));
  for (int k = k_lo; k <= k_hi; ++k) {
    Eigen::MatrixXcd& acc = table.coeff[k - k_lo];
    for (int g = 0; g < n; ++g) {
      acc += std::exp(-kI * (kTwoPi * k * g / n)) * samples[g];
    }
    acc /= n;
  }
  return table;
}

}  // namespace

FourierTable fourier_tables(const FloquetModes& modes, const Eigen::MatrixXcd& op, int k_lo,
                            int k_hi) {
  return tables_from_samples(frame_samples(modes, op), k_lo, k_hi);
}

std::vector<FloquetMatrixElement> matrix_elements(const FloquetModes& modes,
                                                  const Eigen::MatrixXcd& op,
                                                  const MatrixElementOptions& opt) {
  std::vector<Eigen::MatrixXcd> samples = frame_samples(modes, op);
  const Eigen::Index dim = samples.front().rows();
  const double noise_floor = std::max(opt.threshold, 1e-10 * op.norm());

  int window = std::max(opt.k_window, 1);
  FourierTable table;
  while (true) {
    if (window > opt.k_window_cap) {
      throw std::runtime_error("matrix_elements: dominant harmonic outside the widest window; widen k_window_cap");
    }
    table = tables_from_samples(samples, -window, window);
    bool boundary_max = false;
    for (Eigen::Index i = 0; i < dim && !boundary_max; ++i) {
      for (Eigen::Index j = 0; j < dim && !boundary_max; ++j) {
        double best = 0.0;
        int best_k = 0;
        for (int k = -window; k <= window; ++k) {
          double mag = std::abs(table.at(k)(i, j));
          if (mag > best) {
            best = mag;
            best_k = k;
          }
        }
        if (best > noise_floor && std::abs(best_k) == window) boundary_max = true;
      }
    }
    if (!boundary_max) break;
    window += 2;
  }

  std::vector<FloquetMatrixElement> out;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double best = -1.0;
      int best_k = 0;
      for (int k = -window; k <= window; ++k) {
        double mag = std::abs(table.at(k)(i, j));
        if (mag > best) {
          best = mag;
          best_k = k;
        }
      }
      if (best <= opt.threshold) continue;
      FloquetMatrixElement el;
      el.to = modes.labels[i];
      el.from = modes.labels[j];
      el.to_index = static_cast<int>(i);
      el.from_index = static_cast<int>(j);
      el.value = table.at(best_k)(i, j);
      el.k_max = best_k;
      el.transition_freq =
          modes.quasienergies(j) - modes.quasienergies(i) - best_k * modes.omega_d;
      out.push_back(el);
    }
  }
  std::sort(out.begin(), out.end(), [](const FloquetMatrixElement& a, const FloquetMatrixElement& b) {
    double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.to_index != b.to_index) return a.to_index < b.to_index;
    return a.from_index < b.from_index;
  });
  return out;
}

namespace {

struct TrackedSweep {
  std::vector<FloquetModes> points;               // labels rewritten by continuity
  std::vector<std::vector<double>> label_overlap;  // vs the static state of the current label
};

// Decompose every sweep point, then relabel by maximum overlap with the
// previous point's modes so branches follow through weak anticrossings.
// Falls back to static labels at points where continuity is lost.
TrackedSweep tracked_sweep(const Eigen::MatrixXcd& h0, const Eigen::MatrixXcd& drive_op,
                           double eps, const std::vector<double>& omega_d_grid, const Dims& dims,
                           const std::vector<StateLabel>& needed, int substeps, int threads) {
  const int n_pts = static_cast<int>(omega_d_grid.size());
  TrackedSweep sweep;
  sweep.points.resize(n_pts);
  parallel_for(n_pts, threads, [&](int p) {
    FloquetSystem sys{h0, drive_op, eps, omega_d_grid[p], dims};
    DecomposeOptions opt;
    opt.substeps = substeps;
    opt.n_grid = 0;
    sweep.points[p] = decompose(sys, opt);
  });

  LabeledEigensystem statics = label_eigensystem(h0, dims);
  const Eigen::Index dim = h0.rows();
  auto static_index = [&statics](const StateLabel& l) { return statics.find(l.m, l.n); };

  sweep.label_overlap.assign(n_pts, std::vector<double>(dim, 0.0));
  auto fill_static_overlap = [&](int p) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      int si = static_index(sweep.points[p].labels[j]);
      sweep.label_overlap[p][j] =
          si < 0 ? 0.0
                 : std::norm(statics.states.col(si).dot(sweep.points[p].modes0.col(j)));
    }
  };

  fill_static_overlap(0);
  for (int p = 1; p < n_pts; ++p) {
    Eigen::MatrixXcd cross = sweep.points[p - 1].modes0.adjoint() * sweep.points[p].modes0;
    Eigen::MatrixXd cost(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) cost(i, j) = -std::norm(cross(i, j));
    }
    std::vector<int> assign = min_cost_assignment(cost);
    std::vector<StateLabel> tracked(dim, StateLabel{0, 0});
    std::vector<double> chain(dim, 0.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
      tracked[assign[i]] = sweep.points[p - 1].labels[i];
      chain[assign[i]] = std::norm(cross(i, assign[i]));
    }
    bool continuity_ok = true;
    for (const StateLabel& want : needed) {
      bool found = false;
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (tracked[j].m == want.m && tracked[j].n == want.n) {
          found = true;
          if (chain[j] < 0.5) continuity_ok = false;
          break;
        }
      }
      if (!found) continuity_ok = false;
    }
    if (continuity_ok) sweep.points[p].labels = tracked;
    fill_static_overlap(p);
  }
  return sweep;
}

}  // namespace

std::vector<DispersiveSweepPoint> dispersive_shift_sweep(const SystemParams& params, double eps,
                                                         const std::vector<double>& omega_d_grid,
                                                         const DispersiveSweepOptions& opt) {
  if (opt.n_max < 1) throw std::invalid_argument("dispersive_shift_sweep: n_max must be >= 1");
  if (omega_d_grid.empty()) return {};
  Eigen::MatrixXcd h0 = build_bbq_hamiltonian(params);
  Eigen::MatrixXcd q = ancilla_destroy(params.dims);
  Eigen::MatrixXcd drive = q + q.adjoint();
  LabeledEigensystem statics = label_eigensystem(h0, params.dims);

  std::vector<double> static_gap(opt.n_max + 1);
  for (int n = 0; n <= opt.n_max; ++n) {
    static_gap[n] = statics.energy(1, n) - statics.energy(0, n);
  }
  const double chi0 = static_gap[1] - static_gap[0];

  std::vector<StateLabel> needed;
  for (int n = 0; n <= opt.n_max; ++n) {
    needed.push_back({0, n});
    needed.push_back({1, n});
  }

  TrackedSweep sweep = tracked_sweep(h0, drive, eps, omega_d_grid, params.dims, needed,
                                     opt.substeps, opt.threads);

  std::vector<DispersiveSweepPoint> out(omega_d_grid.size());
  for (std::size_t p = 0; p < omega_d_grid.size(); ++p) {
    const FloquetModes& dec = sweep.points[p];
    DispersiveSweepPoint& pt = out[p];
    pt.omega_d = omega_d_grid[p];
    pt.delta_omega_q.assign(opt.n_max + 1, 0.0);
    pt.valid = true;
    for (int n = 0; n <= opt.n_max; ++n) {
      int ie = dec.find(1, n), ig = dec.find(0, n);
      if (ie < 0 || ig < 0) {
        pt.valid = false;
        continue;
      }
      pt.delta_omega_q[n] =
          wrap_centered(dec.quasienergies(ie) - dec.quasienergies(ig) - static_gap[n],
                        dec.omega_d);
      if (sweep.label_overlap[p][ie] <= 0.5 || sweep.label_overlap[p][ig] <= 0.5 ||
          dec.degenerate[ie] || dec.degenerate[ig]) {
        pt.valid = false;
      }
    }
    pt.chi_d = chi0 + pt.delta_omega_q[1] - pt.delta_omega_q[0];
  }
  return out;
}

std::vector<std::pair<double, double>> sideband_overlap_curve(
    const SystemParams& params, double eps, const std::vector<double>& omega_d_grid,
    StateLabel branch, StateLabel partner, int substeps, int threads) {
  if (omega_d_grid.empty()) return {};
  Eigen::MatrixXcd h0 = build_bbq_hamiltonian(params);
  Eigen::MatrixXcd q = ancilla_destroy(params.dims);
  Eigen::MatrixXcd drive = q + q.adjoint();
  LabeledEigensystem statics = label_eigensystem(h0, params.dims);
  int ip = statics.find(partner.m, partner.n);
  if (ip < 0) {
    throw std::invalid_argument("sideband_overlap_curve: partner state " + label_name(partner) +
                                " not present");
  }

  TrackedSweep sweep = tracked_sweep(h0, drive, eps, omega_d_grid, params.dims, {branch},
                                     substeps, threads);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(omega_d_grid.size());
  for (std::size_t p = 0; p < omega_d_grid.size(); ++p) {
    int jb = sweep.points[p].find(branch.m, branch.n);
    if (jb < 0) {
      throw std::runtime_error("sideband_overlap_curve: branch label lost during the sweep");
    }
    double amp = std::abs(statics.states.col(ip).dot(sweep.points[p].modes0.col(jb)));
    curve.emplace_back(omega_d_grid[p], amp);
  }
  return curve;
}

double sideband_overlap_model(double omega, double delta) {
  return std::sin(0.5 * std::atan2(std::abs(omega), delta));
}

SidebandFit fit_sideband_params(const std::vector<std::pair<double, double>>& curve,
                                double max_rms) {
  if (curve.size() < 4) throw std::invalid_argument("fit_sideband_params: need at least 4 points");

  double y_max = 0.0;
  double span_lo = curve.front().first, span_hi = curve.front().first;
  for (const auto& [w, y] : curve) {
    span_lo = std::min(span_lo, w);
    span_hi = std::max(span_hi, w);
    y_max = std::max(y_max, y);
  }
  double amp0 = std::clamp(y_max, 0.2, 1.0);
  double omega_res0 = curve.front().first;
  double best_gap = 1e300;
  for (const auto& [w, y] : curve) {
    double gap = std::abs(y - amp0 * std::sqrt(0.5));
    if (gap < best_gap) {
      best_gap = gap;
      omega_res0 = w;
    }
  }
  double width0 = std::max((span_hi - span_lo) / 8.0, 1e-9);

  auto residual = [&curve](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      r(i) = p(2) * sideband_overlap_model(p(0), p(1) - curve[i].first) - curve[i].second;
    }
    return r;
  };
  Eigen::VectorXd init(3);
  init << width0, omega_res0, amp0;
  FitResult fit = fit_least_squares(residual, init);
  if (!fit.converged || fit.rms_residual > max_rms) {
    throw std::runtime_error("fit_sideband_params: fit did not converge to the requested quality");
  }
  SidebandFit out;
  out.width = std::abs(fit.params(0));
  out.omega_res = fit.params(1);
  out.amp = std::abs(fit.params(2));
  out.omega = out.amp * out.width;
  out.rms_residual = fit.rms_residual;
  out.converged = fit.converged;
  return out;
}

}  // namespace fsnap
