#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "stargebra/evolution.hpp"
#include "stargebra/random.hpp"

using namespace stargebra;

TEST_CASE("cayley examples") {
  CHECK((cayley(SelfAdjointModel(Matrix::Zero(2, 2))) + Matrix::Identity(2, 2)).norm() < 1e-15);
  const Matrix u = cayley(SelfAdjointModel(oracle::diag({1.0})));
  CHECK(std::abs(u(0, 0) + kI) < 1e-14);
}

TEST_CASE("cayley is unitary and keeps away from 1") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_hermitian(4, rng) * uniform(rng, 0.1, 100.0);
    const Matrix u = cayley(SelfAdjointModel(a));
    CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-12);
    // |λ−i|/|λ+i| has distance 2/√(1+λ²) from 1 for real λ.
    const double lmax = oracle::opnorm(a);
    for (const auto& z : oracle::eig(u)) CHECK(std::abs(z - 1.0) >= 2.0 / std::sqrt(1 + lmax * lmax) * (1 - 1e-9));
  }
}

TEST_CASE("SelfAdjointModel rejects non-Hermitian input") {
  CHECK_THROWS_AS((void)SelfAdjointModel(oracle::unit(2, 0, 1)), Error);
}

TEST_CASE("inverse_cayley examples") {
  CHECK(inverse_cayley(-Matrix::Identity(2, 2)).norm() < 1e-15);
  const Matrix a = inverse_cayley(oracle::diag({-kI}));
  CHECK(std::abs(a(0, 0) - 1.0) < 1e-15);
  CHECK_THROWS_AS((void)inverse_cayley(Matrix::Identity(2, 2)), Error);
  CHECK_THROWS_AS((void)inverse_cayley(oracle::unit(2, 0, 1)), Error);
}

TEST_CASE("inverse_cayley undoes cayley") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_hermitian(3, rng);
    const Matrix back = inverse_cayley(cayley(SelfAdjointModel(a)));
    CHECK((back - a).norm() <= 1e-9 * (1 + a.norm()));
  }
}

TEST_CASE("psi_P allows unbounded symbols on a finite resolution") {
  const auto p = resolve_normal(oracle::diag({1.0, 2.0}));
  const Matrix m = psi_P(p, [](Complex z) { return std::exp(10.0 * z); });
  CHECK(std::abs(m(1, 1) - std::exp(20.0)) <= 1e-12 * std::exp(20.0));
  CHECK_THROWS_AS((void)psi_P(p, [](Complex z) { return 1.0 / (z - 1.0); }), Error);
}

TEST_CASE("evolve at t = 0 is the identity") {
  Rng rng(3);
  const SelfAdjointModel a(random_hermitian(3, rng));
  const Vector x = random_vector(3, rng);
  CHECK((evolve(a, x, 0.0) - x).norm() < 1e-14 * x.norm() * 10);
}

TEST_CASE("evolve on a scalar model is a phase") {
  const SelfAdjointModel a(oracle::diag({2.0}));
  Vector x(1);
  x << 1.0;
  const Vector y = evolve(a, x, 0.5);
  CHECK(std::abs(y(0) - std::polar(1.0, -1.0)) < 1e-15);
}

TEST_CASE("propagator matches the Pade exponential and the group law") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix h = random_hermitian(4, rng);
    const SelfAdjointModel a(h);
    const double s = uniform(rng, -3.0, 3.0), t = uniform(rng, -3.0, 3.0);
    const Matrix expect = oracle::expm(Matrix(-kI * t * h));
    CHECK((a.propagator(t) - expect).norm() < 1e-10);
    CHECK((a.propagator(s + t) - a.propagator(s) * a.propagator(t)).norm() < 1e-10);
  }
}

TEST_CASE("ivp_residual") {
  const SelfAdjointModel zero(Matrix::Zero(2, 2));
  Vector x(2);
  x << 0.6, 0.8;
  CHECK(ivp_residual(zero, x, 1.0, 1e-3) == 0.0);

  const SelfAdjointModel one(oracle::diag({1.0}));
  Vector e(1);
  e << 1.0;
  // |(e^{−ih} − 1)/(ih) + 1| = h/2 + O(h²)
  CHECK(ivp_residual(one, e, 0.0, 1e-3) == doctest::Approx(5e-4).epsilon(1e-3));

  Rng rng(5);
  const SelfAdjointModel a(random_hermitian(3, rng));
  const Vector y = random_unit_vector(3, rng);
  const double r1 = ivp_residual(a, y, 0.7, 1e-3), r2 = ivp_residual(a, y, 0.7, 5e-4);
  CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(1e-2));
  CHECK_THROWS_AS((void)ivp_residual(a, y, 0.0, 0.0), Error);
}

TEST_CASE("truncated diagonal models agree on the shared modes") {
  const auto lambda = [](int k) { return static_cast<double>(k * k); };
  const auto small = SelfAdjointModel::diagonal_truncation(lambda, 8);
  const auto large = SelfAdjointModel::diagonal_truncation(lambda, 32);
  Vector x = Vector::Zero(8);
  for (int k = 0; k < 8; ++k) x(k) = 1.0 / (1.0 + k);
  Vector xl = Vector::Zero(32);
  xl.head(8) = x;
  for (double t : {0.1, 1.0, 10.0}) {
    const Vector ys = evolve(small, x, t), yl = evolve(large, xl, t);
    CHECK((yl.head(8) - ys).norm() < 1e-12);
    CHECK(yl.tail(24).norm() < 1e-14);
  }
}
