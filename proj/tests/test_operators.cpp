#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fsnap/linalg.hpp"
#include "fsnap/operators.hpp"

using namespace fsnap;

TEST_CASE("ladder operators obey canonical commutation on the kept block") {
  Dims d{5, 4};
  MatrixXcd q = ancilla_destroy(d);
  MatrixXcd c = cavity_destroy(d);
  MatrixXcd comm = q * q.adjoint() - q.adjoint() * q;
  // [q, q^dag] = 1 except in the top truncated level
  for (int m = 0; m < d.n_anc - 1; ++m)
    for (int n = 0; n < d.n_cav; ++n)
      CHECK(std::abs(comm(d.index(m, n), d.index(m, n)) - 1.0) < 1e-14);
  CHECK((q * c - c * q).norm() == doctest::Approx(0.0));
  CHECK((q * c.adjoint() - c.adjoint() * q).norm() == doctest::Approx(0.0));
}

TEST_CASE("number operators count the right factor") {
  Dims d{3, 4};
  MatrixXcd nq = ancilla_number(d);
  MatrixXcd nc = cavity_number(d);
  for (int m = 0; m < d.n_anc; ++m)
    for (int n = 0; n < d.n_cav; ++n) {
      int i = d.index(m, n);
      CHECK(nq(i, i).real() == doctest::Approx(m));
      CHECK(nc(i, i).real() == doctest::Approx(n));
    }
}

TEST_CASE("kron matches hand-computed 2x2 example") {
  MatrixXcd a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  MatrixXcd k = kron(a, b);
  CHECK(k(0, 1).real() == doctest::Approx(1.0));
  CHECK(k(0, 3).real() == doctest::Approx(2.0));
  CHECK(k(2, 1).real() == doctest::Approx(3.0));
  CHECK(k(3, 2).real() == doctest::Approx(4.0));
}

TEST_CASE("partial trace over ancilla reduces a product state") {
  Dims d{3, 4};
  VectorXcd psi = VectorXcd::Zero(d.total());
  // (|0> + |1>)/sqrt2 ancilla, |2> cavity
  psi(d.index(0, 2)) = 1.0 / std::sqrt(2.0);
  psi(d.index(1, 2)) = 1.0 / std::sqrt(2.0);
  MatrixXcd rho = psi * psi.adjoint();
  MatrixXcd rc = partial_trace_ancilla(rho, d);
  CHECK(rc(2, 2).real() == doctest::Approx(1.0));
  CHECK(std::abs(rc.trace() - 1.0) < 1e-14);
}

TEST_CASE("hungarian assignment recovers a planted permutation") {
  const int n = 40;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (7 * i + 3) % n;
  MatrixXd overlap = MatrixXd::Constant(n, n, 0.01);
  for (int i = 0; i < n; ++i) overlap(i, perm[i]) = 0.8 + 0.001 * i;
  auto assign = min_cost_assignment(-overlap);
  for (int i = 0; i < n; ++i) CHECK(assign[i] == perm[i]);
}

TEST_CASE("hungarian beats greedy on a conflict instance") {
  // greedy row-wise would take (0,0) then be forced into total 1.0 + 0.1;
  // optimal is 0.9 + 0.9
  MatrixXd w(2, 2);
  w << 1.0, 0.9, 0.9, 0.1;
  auto assign = min_cost_assignment(-w);
  CHECK(assign[0] == 1);
  CHECK(assign[1] == 0);
}

TEST_CASE("expm of hermitian generator is unitary and matches 2-level closed form") {
  MatrixXcd sx(2, 2);
  sx << 0, 1, 1, 0;
  double t = 0.7;
  MatrixXcd u = expm_hermitian_prop(sx, t);
  CHECK((u * u.adjoint() - MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  CHECK(u(0, 0).real() == doctest::Approx(std::cos(t)));
  CHECK(u(0, 1).imag() == doctest::Approx(-std::sin(t)));
}

TEST_CASE("general expm agrees with hermitian special case") {
  Dims d{4, 3};
  MatrixXcd q = ancilla_destroy(d);
  MatrixXcd h = q + q.adjoint();
  MatrixXcd a = cxd(0, -1) * 0.3 * h;
  MatrixXcd e1 = expm_general(a);
  MatrixXcd e2 = expm_hermitian_prop(h, 0.3);
  CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("expm_apply matches expm_general acting on a rectangular block") {
  Dims d{3, 3};
  MatrixXcd q = ancilla_destroy(d);
  MatrixXcd a = cxd(0, -1) * (q + q.adjoint()) * 1.7;
  MatrixXcd y = MatrixXcd::Random(9, 2);
  MatrixXcd ref = expm_general(a) * y;
  expm_apply(a, y);
  CHECK((y - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("least squares fitter recovers exponential decay parameters") {
  VectorXd t(30), y(30);
  for (int i = 0; i < 30; ++i) {
    t(i) = 0.5 * i;
    y(i) = 2.3 * std::exp(-0.17 * t(i));
  }
  auto resid = [&](const VectorXd& p) {
    VectorXd r(30);
    for (int i = 0; i < 30; ++i) r(i) = p(0) * std::exp(-p(1) * t(i)) - y(i);
    return r;
  };
  VectorXd init(2);
  init << 1.0, 0.05;
  auto fit = fit_least_squares(resid, init);
  CHECK(fit.params(0) == doctest::Approx(2.3).epsilon(1e-6));
  CHECK(fit.params(1) == doctest::Approx(0.17).epsilon(1e-6));
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(101, 0);
  parallel_for(101, 4, [&](int i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
}
