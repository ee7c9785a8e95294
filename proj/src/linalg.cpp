#include "fsnap/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fsnap {

MatrixXcd expm_hermitian_prop(const MatrixXcd& k, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(k);
  VectorXcd phases(k.rows());
  for (int i = 0; i < k.rows(); ++i)
    phases(i) = std::exp(cxd(0.0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd expm_general(const MatrixXcd& a) {
  const int n = a.rows();
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = int(std::ceil(std::log2(norm / 0.5)));
  MatrixXcd b = a / std::pow(2.0, s);
  MatrixXcd term = MatrixXcd::Identity(n, n);
  MatrixXcd sum = term;
  for (int k = 1; k < 40; ++k) {
    term = (b * term / double(k)).eval();
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  for (int k = 0; k < s; ++k) sum = (sum * sum).eval();
  return sum;
}

void expm_apply(const MatrixXcd& a, MatrixXcd& y) {
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = int(std::ceil(std::log2(norm / 0.5)));
  double scale = std::pow(2.0, -s);
  for (int rep = 0; rep < (1 << s); ++rep) {
    MatrixXcd term = y;
    for (int k = 1; k < 30; ++k) {
      term = (a * term * (scale / double(k))).eval();
      y += term;
      if (term.cwiseAbs().maxCoeff() < 1e-17 * (1.0 + y.cwiseAbs().maxCoeff())) break;
    }
  }
}

std::vector<int> min_cost_assignment(const MatrixXd& cost) {
  const int n = cost.rows();
  if (cost.cols() != n) throw std::invalid_argument("assignment needs square cost");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

FitResult fit_least_squares(const std::function<VectorXd(const VectorXd&)>& residual,
                            const VectorXd& initial, int max_iter, double tol) {
  FitResult out;
  VectorXd p = initial;
  VectorXd r = residual(p);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const int np = p.size();
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    MatrixXd jac(r.size(), np);
    for (int j = 0; j < np; ++j) {
      double h = 1e-7 * std::max(1.0, std::abs(p(j)));
      VectorXd pj = p;
      pj(j) += h;
      jac.col(j) = (residual(pj) - r) / h;
    }
    MatrixXd jtj = jac.transpose() * jac;
    VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 25; ++tries) {
      MatrixXd m = jtj;
      for (int j = 0; j < np; ++j) m(j, j) += lambda * std::max(jtj(j, j), 1e-12);
      VectorXd dp = m.ldlt().solve(-jtr);
      VectorXd pn = p + dp;
      VectorXd rn = residual(pn);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        double drop = cost - cn;
        p = pn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (drop < tol * (1.0 + cost) || dp.norm() < tol * (1.0 + p.norm())) {
          out.converged = true;
          it = max_iter;
        }
        break;
      }
      lambda *= 8.0;
    }
    if (!stepped) {
      out.converged = true;
      break;
    }
  }
  out.params = p;
  out.rms_residual = std::sqrt(cost / std::max<int>(1, r.size()));
  return out;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fsnap
