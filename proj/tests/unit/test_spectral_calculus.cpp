#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "stargebra/algebra_core.hpp"
#include "stargebra/linalg.hpp"
#include "stargebra/random.hpp"
#include "stargebra/spectral_calculus.hpp"

using namespace stargebra;

namespace {

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("spectrum: identity, nilpotent and the cyclic shift") {
  for (const auto& z : spectrum(Matrix::Identity(3, 3)).eigenvalues) CHECK(std::abs(z - 1.0) < 1e-15);

  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  for (const auto& z : spectrum(nil).eigenvalues) CHECK(std::abs(z) < 1e-15);

  // The DFT diagonalises the shift: S·F* = F*·diag(ω^{-k}), so sp(S) = 4th roots of unity.
  const auto shift = group_ring(FiniteGroup::cyclic(4)).embedding[1];
  const Matrix f = oracle::dft(4);
  CHECK((f * shift * f.adjoint() / 4.0).isDiagonal(1e-12));
  const std::vector<Complex> expect{1.0, kI, -1.0, -kI};
  CHECK(oracle::hausdorff(spectrum(shift).eigenvalues, expect) < 1e-12);
}

TEST_CASE("spectrum: Hermitian input yields real eigenvalues") {
  Rng rng(1);
  const Matrix h = random_hermitian(6, rng);
  for (const auto& z : spectrum(h).eigenvalues) CHECK(z.imag() == 0.0);
  CHECK(oracle::hausdorff(spectrum(h).eigenvalues, oracle::eig(h)) < 1e-12);
}

TEST_CASE("spectrum: non-finite input is rejected") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of([&] { (void)spectrum(a); }) == ErrorKind::Precondition);
}

TEST_CASE("spectral_radius_limit") {
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(spectral_radius_limit(nil, 1) == 0.0);
  for (int k : {1, 5, 30}) CHECK(spectral_radius_limit(oracle::diag({2.0, 1.0}), k) == doctest::Approx(2.0).epsilon(1e-14));

  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(6, rng);
    double rho = 0.0;
    for (const auto& z : oracle::eig(a)) rho = std::max(rho, std::abs(z));
    CHECK(std::abs(spectral_radius_limit(a, 30) - rho) <= 1e-6 * (1 + rho));
  }
}

TEST_CASE("spectral_radius_limit survives huge and tiny scales") {
  Rng rng(3);
  const Matrix a = random_matrix(4, rng);
  double rho = 0.0;
  for (const auto& z : oracle::eig(a)) rho = std::max(rho, std::abs(z));
  CHECK(spectral_radius_limit(1e200 * a, 30) == doctest::Approx(1e200 * rho).epsilon(1e-6));
  CHECK(spectral_radius_limit(1e-200 * a, 30) == doctest::Approx(1e-200 * rho).epsilon(1e-6));
}

TEST_CASE("ptak") {
  CHECK(ptak(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  Rng rng(4);
  const Matrix h = random_hermitian(5, rng);
  CHECK(ptak(h) == doctest::Approx(spectral_radius(h)).epsilon(1e-12));
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 2.0;
  CHECK(ptak(nil) == doctest::Approx(2.0));
  CHECK(spectral_radius(nil) == 0.0);
  const Matrix a = random_matrix(5, rng);
  CHECK(ptak(a) == doctest::Approx(oracle::opnorm(a)).epsilon(1e-12));
}

TEST_CASE("RationalFn factors into zeros, poles and gamma") {
  // (z² + 1)/(z − 5) = γ (α₁ − z)(α₂ − z)/(β − z) with γ = −1.
  const RationalFn r({1.0, 0.0, 1.0}, {-5.0, 1.0});
  CHECK(r.poles().size() == 1);
  CHECK(std::abs(r.poles()[0] - 5.0) < 1e-12);
  CHECK(oracle::hausdorff(r.zeros(), {kI, -kI}) < 1e-12);
  CHECK(std::abs(r.gamma() + 1.0) < 1e-12);
  const Complex z(0.3, -0.7);
  CHECK(std::abs(r(z) - (z * z + 1.0) / (z - 5.0)) < 1e-12);
}

TEST_CASE("RationalFn cancels common factors") {
  // (z − 1)(z − 2)/(z − 1) = z − 2.
  const RationalFn r({2.0, -3.0, 1.0}, {-1.0, 1.0});
  CHECK(r.poles().empty());
  CHECK(r.zeros().size() == 1);
  CHECK(kind_of([] { (void)rational_apply(Matrix::Identity(2, 2), RationalFn({1.0, 1.0}, {1.0, 1.0})); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("rational_apply examples") {
  Rng rng(5);
  const Matrix a = random_matrix(4, rng);
  CHECK((rational_apply(a, RationalFn({0.0, 1.0}, {1.0})) - a).norm() < 1e-12);

  const Matrix inv = rational_apply(oracle::diag({1.0, 2.0}), RationalFn({1.0}, {0.0, 1.0}));
  CHECK((inv - oracle::diag({1.0, 0.5})).norm() < 1e-14);

  const RationalFn r({1.0, 0.0, 1.0}, {-5.0, 1.0});
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix b = random_matrix(5, rng);
    std::vector<Complex> mapped;
    for (const auto& z : oracle::eig(b)) mapped.push_back((z * z + 1.0) / (z - 5.0));
    CHECK(oracle::hausdorff(oracle::eig(rational_apply(b, r)), mapped) <= 1e-6);
  }
}

TEST_CASE("rational_apply rejects a pole on the spectrum") {
  const RationalFn r({1.0}, {-2.0, 1.0});
  CHECK(kind_of([&] { (void)rational_apply(oracle::diag({1.0, 2.0}), r); }) == ErrorKind::Precondition);
}

TEST_CASE("sqrt_series examples") {
  CHECK(sqrt_series(Matrix::Zero(3, 3)).norm() == 0.0);
  const Matrix b = sqrt_series(oracle::diag({0.75}));
  CHECK(std::abs(b(0, 0) - (std::sqrt(1.75) - 1.0)) < 1e-14);
}

TEST_CASE("sqrt_series matches the eigendecomposition square root") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_hermitian(5, rng);
    double rho = 0.0;
    for (const auto& z : oracle::eig(a)) rho = std::max(rho, std::abs(z));
    a *= 0.9 / rho;
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(5, 5) + a);
    const Matrix oracle_root =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() * es.eigenvectors().adjoint() -
        Matrix::Identity(5, 5);
    const Matrix b = sqrt_series(a);
    CHECK((b - oracle_root).norm() <= 1e-8);
    CHECK(linalg::hermiticity_defect(b) <= 1e-12);
  }
}

TEST_CASE("sqrt_series requires spectral radius below one") {
  CHECK(kind_of([] { (void)sqrt_series(oracle::diag({1.0})); }) == ErrorKind::Precondition);
}

TEST_CASE("positive_sqrt") {
  CHECK((positive_sqrt(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-15);
  CHECK((positive_sqrt(oracle::diag({4.0, 9.0})) - oracle::diag({2.0, 3.0})).norm() < 1e-14);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix c = random_matrix(5, rng);
    const Matrix a = c.adjoint() * c;
    const Matrix r = positive_sqrt(a);
    CHECK((r * r - a).norm() <= 1e-9 * oracle::opnorm(a));
  }
  CHECK(kind_of([] { (void)positive_sqrt(oracle::diag({1.0, -1.0})); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { (void)positive_sqrt(oracle::unit(2, 0, 1)); }) == ErrorKind::Precondition);
}

TEST_CASE("abs_value") {
  Rng rng(8);
  const Matrix u = random_unitary(4, rng);
  CHECK((abs_value(u) - Matrix::Identity(4, 4)).norm() < 1e-12);
  CHECK((abs_value(oracle::diag({-3.0})) - oracle::diag({3.0})).norm() < 1e-14);
  const Matrix a = random_matrix(5, rng);
  CHECK(std::abs(oracle::opnorm(abs_value(a)) - oracle::opnorm(a)) <= 1e-9);
}

TEST_CASE("polar_factorize examples") {
  Rng rng(9);
  const Matrix u = random_unitary(4, rng);
  auto pf = polar_factorize(u);
  CHECK((pf.unitary - u).norm() < 1e-12);
  CHECK((pf.positive - Matrix::Identity(4, 4)).norm() < 1e-12);

  pf = polar_factorize(oracle::diag({2.0, -3.0}));
  CHECK((pf.unitary - oracle::diag({1.0, -1.0})).norm() < 1e-14);
  CHECK((pf.positive - oracle::diag({2.0, 3.0})).norm() < 1e-14);
}

TEST_CASE("polar_factorize agrees with the SVD factors") {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = random_matrix(uniform_int(rng, 2, 7), rng);
    const auto pf = polar_factorize(a);
    const auto ref = oracle::svd_polar(a);
    const double na = oracle::opnorm(a);
    CHECK((a - pf.unitary * pf.positive).norm() <= 1e-8 * na);
    CHECK((pf.unitary.adjoint() * pf.unitary - Matrix::Identity(a.rows(), a.rows())).norm() <= 1e-10);
    CHECK((pf.unitary - ref.u).norm() <= 1e-8);
    CHECK((pf.positive - ref.p).norm() <= 1e-8 * na);
  }
}

TEST_CASE("polar_factorize rejects singular input") {
  CHECK(kind_of([] { (void)polar_factorize(oracle::diag({1.0, 0.0})); }) == ErrorKind::Precondition);
}

TEST_CASE("orth_decompose") {
  auto parts = orth_decompose(oracle::diag({1.0, -2.0}));
  CHECK((parts.plus - oracle::diag({1.0, 0.0})).norm() < 1e-14);
  CHECK((parts.minus - oracle::diag({0.0, 2.0})).norm() < 1e-14);

  Rng rng(11);
  const Matrix c = random_matrix(4, rng);
  const Matrix pos = c * c.adjoint();
  parts = orth_decompose(pos);
  CHECK((parts.plus - pos).norm() < 1e-12 * pos.norm());
  CHECK(parts.minus.norm() < 1e-12 * pos.norm());

  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_hermitian(5, rng);
    parts = orth_decompose(h);
    const double nh = oracle::opnorm(h);
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(parts.plus).eigenvalues().minCoeff() >= -1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(parts.minus).eigenvalues().minCoeff() >= -1e-10);
    CHECK(oracle::opnorm(parts.plus * parts.minus) <= 1e-9 * nh * nh);
    CHECK((parts.plus - parts.minus - h).norm() <= 1e-12 * nh * 10);
  }
  CHECK(kind_of([] { (void)orth_decompose(oracle::unit(2, 0, 1)); }) == ErrorKind::Precondition);
}

TEST_CASE("reflection_split") {
  auto pq = reflection_split(Matrix::Identity(3, 3));
  CHECK((pq.p - Matrix::Identity(3, 3)).norm() == 0.0);
  CHECK(pq.q.norm() == 0.0);

  pq = reflection_split(oracle::diag({1.0, -1.0}));
  CHECK((pq.p - oracle::diag({1.0, 0.0})).norm() == 0.0);
  CHECK((pq.q - oracle::diag({0.0, 1.0})).norm() == 0.0);

  Rng rng(12);
  const Matrix v = random_unitary(5, rng).leftCols(2);
  const Matrix proj = v * v.adjoint();
  pq = reflection_split(2.0 * proj - Matrix::Identity(5, 5));
  CHECK((pq.p - proj).norm() <= 1e-10);
  CHECK(kind_of([] { (void)reflection_split(oracle::diag({1.0, 2.0})); }) == ErrorKind::Precondition);
}

TEST_CASE("cayley_bounded") {
  CHECK((cayley_bounded(Matrix::Zero(2, 2), 1.0) + Matrix::Identity(2, 2)).norm() < 1e-15);
  const Matrix u = cayley_bounded(oracle::diag({1.0}), 2.0);
  CHECK(std::abs(u(0, 0) - Complex(-3.0, -4.0) / 5.0) < 1e-15);

  Rng rng(13);
  const Matrix h = random_hermitian(5, rng);
  const Matrix w = cayley_bounded(h, spectral_radius(h) + 1.0);
  CHECK((w.adjoint() * w - Matrix::Identity(5, 5)).norm() <= 1e-10);
  CHECK(kind_of([&] { (void)cayley_bounded(h, 0.5 * spectral_radius(h)); }) == ErrorKind::Precondition);
}

TEST_CASE("functional_calculus examples") {
  Rng rng(14);
  const Matrix b = random_normal(random_vector(4, rng), rng);
  CHECK((functional_calculus(b, [](Complex z) { return z; }) - b).norm() < 1e-12);

  const Matrix c = functional_calculus(oracle::diag({0.0, std::numbers::pi}), [](Complex z) { return std::cos(z); });
  CHECK((c - oracle::diag({1.0, -1.0})).norm() < 1e-15);

  for (int trial = 0; trial < 10; ++trial) {
    const Matrix h = random_hermitian(5, rng);
    const Matrix e = functional_calculus(h, [](Complex z) { return std::exp(z); });
    CHECK((e - oracle::expm(h)).norm() <= 1e-8 * std::max(1.0, e.norm()));
  }
}

TEST_CASE("functional_calculus is multiplicative and maps spectra") {
  Rng rng(15);
  const Matrix b = random_normal(random_vector(5, rng), rng);
  const ScalarFn f = [](Complex z) { return z * z + 1.0; };
  const ScalarFn g = [](Complex z) { return std::exp(z); };
  const Matrix fg = functional_calculus(b, [&](Complex z) { return f(z) * g(z); });
  CHECK((fg - functional_calculus(b, f) * functional_calculus(b, g)).norm() <= 1e-10 * fg.norm());
  std::vector<Complex> mapped;
  for (const auto& z : oracle::eig(b)) mapped.push_back(f(z));
  CHECK(oracle::hausdorff(oracle::eig(functional_calculus(b, f)), mapped) <= 1e-10);
}

TEST_CASE("functional_calculus rejects non-normal input and undefined values") {
  CHECK(kind_of([] { (void)functional_calculus(oracle::unit(2, 0, 1), [](Complex z) { return z; }); }) ==
        ErrorKind::Precondition);
  CHECK(kind_of([] { (void)functional_calculus(oracle::diag({0.0, 1.0}), [](Complex z) { return 1.0 / z; }); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("spectral identities on random pairs") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = uniform_int(rng, 2, 6);
    const Matrix a = random_matrix(n, rng), b = random_matrix(n, rng);
    CHECK(oracle::hausdorff(spectrum(a * b).eigenvalues, spectrum(b * a).eigenvalues) <= 1e-8);
    std::vector<Complex> conj;
    for (const auto& z : spectrum(a).eigenvalues) conj.push_back(std::conj(z));
    CHECK(linalg::multiset_distance(sorted(spectrum(a.adjoint()).eigenvalues), sorted(conj)) <= 1e-10 * (1 + a.norm()));
    const double r = ptak(a);
    CHECK(ptak(a.adjoint()) == doctest::Approx(r).epsilon(1e-12));
    CHECK(ptak(a.adjoint() * a) == doctest::Approx(r * r).epsilon(1e-12));
  }
}
