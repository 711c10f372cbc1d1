#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/oracles.hpp"
#include "stargebra/algebra_core.hpp"
#include "stargebra/gelfand.hpp"
#include "stargebra/random.hpp"
#include "stargebra/spectral_measures.hpp"

using namespace stargebra;

namespace {

int index_of(const Resolution& p, Complex z) {
  for (size_t i = 0; i < p.size(); ++i)
    if (std::abs(p.points[i] - z) < 1e-9) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("resolve_normal: diag(1, 1, 2)") {
  const auto p = resolve_normal(oracle::diag({1.0, 1.0, 2.0}));
  REQUIRE(p.size() == 2);
  const int one = index_of(p, 1.0), two = index_of(p, 2.0);
  REQUIRE(one >= 0);
  REQUIRE(two >= 0);
  CHECK((p.projections[static_cast<size_t>(one)] - oracle::diag({1.0, 1.0, 0.0})).norm() < 1e-12);
  CHECK((p.projections[static_cast<size_t>(two)] - oracle::unit(3, 2, 2)).norm() < 1e-12);
  CHECK(p.defect() < 1e-12);
}

TEST_CASE("resolve_normal: the shift is resolved into rank-one Fourier projections") {
  const int n = 5;
  const auto p = resolve_normal(oracle::shift(n));
  REQUIRE(p.size() == n);
  const Matrix f = oracle::dft(n);
  for (int k = 0; k < n; ++k) {
    // S f̄_k = ω^k f̄_k for the conjugated DFT row.
    const Vector v = f.row(k).adjoint() / std::sqrt(static_cast<double>(n));
    const int i = index_of(p, oracle::root_of_unity(n, k));
    REQUIRE(i >= 0);
    CHECK((p.projections[static_cast<size_t>(i)] - v * v.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("resolve_normal reconstructs random normal matrices") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int mult[] = {1, 3, 2};
    const Matrix b = random_normal_with_multiplicities(mult, rng);
    const auto p = resolve_normal(b);
    CHECK(p.size() == 3);
    CHECK(reconstruction_error(b, p) <= 1e-10 * oracle::opnorm(b));
    CHECK(p.defect() < 1e-10);
    auto ranks = p.ranks();
    std::sort(ranks.begin(), ranks.end());
    CHECK(ranks == std::vector<Eigen::Index>{1, 2, 3});
  }
}

TEST_CASE("resolve_normal rejects non-normal input") {
  CHECK_THROWS_AS((void)resolve_normal(oracle::unit(2, 0, 1)), Error);
}

TEST_CASE("measure of a set sums the projections") {
  const auto p = resolve_normal(oracle::diag({1.0, 2.0, 3.0}));
  const int pick[] = {index_of(p, 1.0), index_of(p, 3.0)};
  CHECK((p.measure(pick) - oracle::diag({1.0, 0.0, 1.0})).norm() < 1e-12);
  CHECK(p.measure(std::span<const int>()).norm() == 0.0);
}

TEST_CASE("pi_P is multiplicative and agrees with the eigen oracle") {
  Rng rng(2);
  const int mult[] = {2, 1, 1};
  const Matrix b = random_normal_with_multiplicities(mult, rng);
  const auto p = resolve_normal(b);
  const ScalarFn f = [](Complex z) { return z * z + 1.0; };
  const ScalarFn g = [](Complex z) { return std::exp(z); };
  const ScalarFn fg = [&](Complex z) { return f(z) * g(z); };
  CHECK((pi_P(p, fg) - pi_P(p, f) * pi_P(p, g)).norm() < 1e-9 * pi_P(p, fg).norm());
  CHECK((pi_P(p, f) - (b * b + Matrix::Identity(4, 4))).norm() < 1e-9 * (1 + b.norm() * b.norm()));
  CHECK((pi_P(p, [](Complex z) { return std::conj(z); }) - b.adjoint()).norm() < 1e-9 * b.norm());
}

TEST_CASE("vector_measure") {
  const auto p = resolve_normal(oracle::diag({1.0, -1.0}));
  Vector x(2);
  x << 0.6, 0.8;
  const auto mu = vector_measure(p, x);
  CHECK(mu.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(mu.weights[static_cast<size_t>(index_of(p, 1.0))] - 0.36) < 1e-12);
  CHECK(std::abs(mu.integrate([](Complex z) { return z; }) - (0.36 - 0.64)) < 1e-12);
}

TEST_CASE("image_resolution merges coinciding images") {
  const auto p = resolve_normal(oracle::diag({1.0, -1.0}));
  const auto q = image_resolution(p, [](Complex z) { return z * z; });
  REQUIRE(q.size() == 1);
  CHECK(std::abs(q.points[0] - 1.0) < 1e-12);
  CHECK((q.projections[0] - Matrix::Identity(2, 2)).norm() < 1e-12);
  // π_{f(P)}(g) = π_P(g∘f)
  const ScalarFn g = [](Complex z) { return 3.0 * z + 1.0; };
  CHECK((pi_P(q, g) - pi_P(p, [&](Complex z) { return g(z * z); })).norm() < 1e-12);
}

TEST_CASE("resolve_representation on the regular representation of Z/4") {
  const auto ring = group_ring(FiniteGroup::cyclic(4));
  const auto chars = characters(ring.algebra);
  const auto p = resolve_representation(ring.algebra.basis(), chars);
  REQUIRE(p.size() == 4);
  CHECK(p.defect() < 1e-10);
  for (size_t k = 0; k < p.size(); ++k) {
    const int label = static_cast<int>(p.points[k].real());
    CHECK(p.points[k].imag() == 0.0);
    // π(δ₁) = Σ τ_k(δ₁) P_k
    const Complex tau = chars.characters[static_cast<size_t>(label)](ring.embedding[1]);
    CHECK((ring.embedding[1] * p.projections[k] - tau * p.projections[k]).norm() < 1e-10);
  }
}

TEST_CASE("resolve_representation of an amplified diagonal algebra") {
  Rng rng(3);
  const int mult[] = {1, 2};
  const Matrix b = random_normal_with_multiplicities(mult, rng);
  const auto a = build_algebra(3, std::span<const Matrix>(&b, 1));
  const auto chars = characters(a);
  const auto p = resolve_representation(a.basis(), chars);
  CHECK(p.size() == 2);
  for (const auto& x : a.basis()) {
    Matrix sum = Matrix::Zero(3, 3);
    for (size_t k = 0; k < p.size(); ++k)
      sum += chars.characters[static_cast<size_t>(p.points[k].real())](x) * p.projections[k];
    CHECK((sum - x).norm() < 1e-9);
  }
}

TEST_CASE("atom_eigen_check") {
  const Matrix b = oracle::diag({1.0, 2.0, 2.0});
  const auto p = resolve_normal(b);
  auto r = atom_eigen_check(p, b, 2.0);
  CHECK(r.is_atom);
  CHECK(r.eigenspace.cols() == 2);
  r = atom_eigen_check(p, b, 1.0);
  CHECK(r.is_atom);
  CHECK(r.eigenspace.cols() == 1);
  r = atom_eigen_check(p, b, 3.0);
  CHECK_FALSE(r.is_atom);
  CHECK(r.eigenspace.cols() == 0);
}

TEST_CASE("fuglede_check") {
  const Matrix n = oracle::diag({1.0, kI});
  CHECK(fuglede_check(n, n, Matrix::Identity(2, 2)));
  CHECK(fuglede_check(n, n, oracle::diag({3.0, -2.0})));
  // E12 diag(1, i) = i E12 = diag(i, 1) E12.
  const Matrix n2 = oracle::diag({kI, 1.0});
  CHECK(fuglede_check(n, n2, oracle::unit(2, 0, 1)));
  CHECK_THROWS_AS((void)fuglede_check(n, n, oracle::unit(2, 0, 1)), Error);
}

TEST_CASE("fuglede_check on random intertwiners") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector ev = random_vector(3, rng);
    const Matrix u = random_unitary(3, rng);
    const Matrix n1 = u * ev.asDiagonal() * u.adjoint();
    const Matrix w = random_unitary(3, rng);
    const Matrix n2 = w * n1 * w.adjoint();
    // a = w·f(n1) intertwines n1 with n2 for any polynomial f.
    const Matrix a = w * (n1 * n1 + 2.0 * Matrix::Identity(3, 3));
    CHECK(fuglede_check(n1, n2, a));
  }
}

TEST_CASE("spectral_representation of the regular representation of Z/4") {
  const auto ring = group_ring(FiniteGroup::cyclic(4));
  const auto chars = characters(ring.algebra);
  Vector c = Vector::Zero(4);
  c(0) = 1.0;  // δ_e is cyclic
  const auto s = spectral_representation(ring.algebra.basis(), c, chars);
  CHECK(s.support.size() == 4);
  for (double w : s.mu.weights) CHECK(w == doctest::Approx(0.25).epsilon(1e-10));
  CHECK((s.isometry.adjoint() * s.isometry - Matrix::Identity(4, 4)).norm() < 1e-10);
  Vector hat(4);
  for (int k = 0; k < 4; ++k) hat(k) = chars.characters[static_cast<size_t>(s.support[static_cast<size_t>(k)])](ring.embedding[1]);
  CHECK((s.isometry * ring.embedding[1] - hat.asDiagonal() * s.isometry).norm() < 1e-10);
}

TEST_CASE("spectral_representation rejects a vector that is not cyclic") {
  const auto ring = group_ring(FiniteGroup::cyclic(4));
  const auto chars = characters(ring.algebra);
  // δ_e + δ₂ has no weight on the characters with τ(δ₂) = −1.
  Vector c = Vector::Zero(4);
  c(0) = 1.0 / std::sqrt(2.0);
  c(2) = 1.0 / std::sqrt(2.0);
  try {
    (void)spectral_representation(ring.algebra.basis(), c, chars);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}
