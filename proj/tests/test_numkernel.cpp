// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqz/numkernel/cmatrix.hpp"
#include "sqz/numkernel/kernels.hpp"
#include "sqz/numkernel/linalg.hpp"

#ifdef SQZ_TEST_WITH_EIGEN
#include <Eigen/Dense>
#endif

using namespace sqz;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

CMatrix naive_product(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

}  // namespace

TEST_CASE("matrix basics") {
  CMatrix a(2, 2, {cplx(1, 1), 2.0, 3.0, cplx(0, -4)});
  CHECK(a.trace() == cplx(1, -3));
  CHECK(a.adjoint()(0, 1) == cplx(3, 0));
  CHECK(a.adjoint()(1, 1) == cplx(0, 4));
  CHECK(a.transpose()(0, 1) == cplx(3, 0));
  CHECK((a - a).max_abs() == 0.0);
  CHECK((CMatrix::identity(2) * a - a).max_abs() == 0.0);
  CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(CMatrix(2, 2) + CMatrix(3, 3), std::invalid_argument);
}

TEST_CASE("kron and column-stacking vec") {
  std::mt19937_64 rng(1);
  const CMatrix u = random_matrix(3, 3, rng);
  const CMatrix x = random_matrix(3, 3, rng);
  const CMatrix v = random_matrix(3, 3, rng);
  // vec(u x v) = (v^T kron u) vec(x)
  const CVector lhs = vec(u * x * v);
  const CVector rhs = matvec(kron(v.transpose(), u), vec(x));
  double err = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
  CHECK(err < 1e-12);
  CHECK((unvec(vec(x), 3, 3) - x).max_abs() == 0.0);
  CHECK(vec(x)[1] == x(1, 0));
}

TEST_CASE("inner product is antilinear in the first slot") {
  CVector x{cplx(0, 1)};
  CVector y{1.0};
  CHECK(inner(x, y) == cplx(0, -1));
  CHECK(norm2(CVector{3.0, cplx(0, 4)}) == doctest::Approx(5.0));
}

TEST_CASE("kernel variants agree with the scalar reference") {
  using namespace sqz::kernels;
  const KernelTable& ref = scalar_table();
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!available(isa)) continue;
    CAPTURE(to_string(isa));
    const KernelTable& k = table(isa);
    std::mt19937_64 rng(42);
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 7u, 8u, 17u, 64u, 65u, 130u}) {
      CAPTURE(n);
      const CVector x = random_vector(n, rng);
      CVector y1 = random_vector(n, rng);
      CVector y2 = y1;
      const cplx a(0.3, -1.7);
      ref.axpy(n, a, x.data(), y1.data());
      k.axpy(n, a, x.data(), y2.data());
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-13);
      const cplx d1 = ref.dotu(n, x.data(), y1.data());
      const cplx d2 = k.dotu(n, x.data(), y1.data());
      CHECK(std::abs(d1 - d2) < 1e-12 * (1.0 + std::abs(d1)) * (1.0 + n));
    }
    for (auto [m, kk, nn] : {std::tuple{1, 1, 1}, {3, 5, 7}, {8, 8, 8}, {17, 9, 33}, {70, 65, 66}, {130, 3, 129}}) {
      CAPTURE(m);
      CAPTURE(kk);
      CAPTURE(nn);
      const CMatrix a = random_matrix(m, kk, rng);
      const CMatrix b = random_matrix(kk, nn, rng);
      CMatrix c1 = random_matrix(m, nn, rng);
      CMatrix c2 = c1;
      ref.gemm_acc(m, nn, kk, a.data(), kk, b.data(), nn, c1.data(), nn);
      k.gemm_acc(m, nn, kk, a.data(), kk, b.data(), nn, c2.data(), nn);
      CHECK((c1 - c2).max_abs() < 1e-11);
      const CVector x = random_vector(kk, rng);
      CVector g1(m), g2(m);
      ref.gemv(m, kk, a.data(), kk, x.data(), g1.data());
      k.gemv(m, kk, a.data(), kk, x.data(), g2.data());
      for (int i = 0; i < m; ++i) CHECK(std::abs(g1[i] - g2[i]) < 1e-11);
    }
  }
}

TEST_CASE("matrix product matches the triple loop under every kernel") {
  using namespace sqz::kernels;
  const Isa saved = active().isa;
  std::mt19937_64 rng(3);
  const CMatrix a = random_matrix(37, 21, rng);
  const CMatrix b = random_matrix(21, 45, rng);
  const CMatrix ref = naive_product(a, b);
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!available(isa)) continue;
    set_active(isa);
    CHECK((a * b - ref).max_abs() < 1e-12);
  }
  set_active(saved);
}

TEST_CASE("expm on closed forms") {
  const double th = 0.7;
  CMatrix gen(2, 2, {0.0, -th, th, 0.0});
  const CMatrix r = expm(gen);
  CHECK(std::abs(r(0, 0) - std::cos(th)) < 1e-14);
  CHECK(std::abs(r(1, 0) - std::sin(th)) < 1e-14);
  CHECK((expm(CMatrix(3, 3)) - CMatrix::identity(3)).max_abs() == 0.0);
  // nilpotent: exp(N) = I + N
  CMatrix nil(2, 2, {0.0, 5.0, 0.0, 0.0});
  CHECK((expm(nil) - (CMatrix::identity(2) + nil)).max_abs() < 1e-14);
  // large norm exercises scaling and squaring
  CMatrix big = CMatrix::diagonal(CVector{cplx(-30, 2), cplx(4, -1)});
  const CMatrix e = expm(big);
  CHECK(std::abs(e(0, 0) - std::exp(cplx(-30, 2))) < 1e-14);
  CHECK(std::abs(e(1, 1) / std::exp(cplx(4, -1)) - 1.0) < 1e-13);
}

TEST_CASE("expm tolerance bounds") {
  CHECK_THROWS_AS(expm(CMatrix::identity(2), 1e-16), std::invalid_argument);
  CHECK_THROWS_AS(expm(CMatrix::identity(2), 1e-5), std::invalid_argument);
  CHECK_NOTHROW(expm(CMatrix::identity(2), 1e-15));
  CHECK_NOTHROW(expm(CMatrix::identity(2), 1e-6));
  CHECK_THROWS_AS(expm(CMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("expm of a skew-Hermitian matrix is unitary") {
  std::mt19937_64 rng(9);
  const CMatrix a = random_matrix(6, 6, rng);
  const CMatrix k = a - a.adjoint();
  CHECK(unitarity_defect(expm(k)) < 1e-12);
}

TEST_CASE("expm_apply agrees with expm") {
  std::mt19937_64 rng(5);
  for (double scale : {0.1, 1.0, 7.0}) {
    const CMatrix a = scale * random_matrix(9, 9, rng);
    const CVector v = random_vector(9, rng);
    for (double t : {0.0, 0.3, 1.0}) {
      const CVector w1 = matvec(expm(t * a), v);
      const CVector w2 = expm_apply(a, v, t);
      double err = 0.0, nrm = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        err = std::max(err, std::abs(w1[i] - w2[i]));
        nrm = std::max(nrm, std::abs(w1[i]));
      }
      CHECK(err <= 1e-11 * (1.0 + nrm));
    }
  }
}

TEST_CASE("opnorm and eigenvalues on simple cases") {
  CHECK(opnorm(CMatrix::diagonal(CVector{3.0, cplx(0, -5), 1.0})) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(opnorm(CMatrix(2, 2, {0.0, 2.0, 0.0, 0.0})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(opnorm(CMatrix(3, 3)) == 0.0);
  const auto ev = hermitian_eigenvalues(CMatrix(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}));
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(hermiticity_defect(CMatrix(2, 2, {1.0, 2.0, 2.0, 1.0})) == 0.0);
  CHECK(hermiticity_defect(CMatrix(2, 2, {1.0, 2.0, 0.0, 1.0})) > 0.0);
}

#ifdef SQZ_TEST_WITH_EIGEN
TEST_CASE("opnorm matches the largest singular value from Eigen") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    const CMatrix a = random_matrix(n, n, rng);
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = a(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    CHECK(opnorm(a) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
  }
}

TEST_CASE("Hermitian eigenvalues match Eigen") {
  std::mt19937_64 rng(12);
  const CMatrix a = random_matrix(8, 8, rng);
  const CMatrix h = a + a.adjoint();
  Eigen::MatrixXcd e(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) e(i, j) = h(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
  const auto ev = hermitian_eigenvalues(h);
  for (std::size_t i = 0; i < 8; ++i) CHECK(ev[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
}
#endif
