#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "../support/oracles.hpp"
#include "stargebra/algebra_core.hpp"
#include "stargebra/commutant.hpp"
#include "stargebra/random.hpp"
#include "stargebra/states_gns.hpp"

using namespace stargebra;

namespace {

StarAlgebra full_matrices(int n) {
  std::vector<Matrix> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(oracle::unit(n, i, i + 1));
  return build_algebra(n, gens);
}

StarAlgebra diagonal_algebra(int n) {
  std::vector<Matrix> gens;
  for (int i = 0; i < n; ++i) gens.push_back(oracle::unit(n, i, i));
  return build_algebra(n, gens);
}

// φ(a) = a₀₀ on M_n.
Functional corner(const StarAlgebra& a) { return Functional(a, oracle::unit(a.ambient_dim(), 0, 0)); }

}  // namespace

TEST_CASE("Functional evaluates tr(F a)") {
  const auto m2 = full_matrices(2);
  const Matrix f = oracle::diag({2.0, 3.0});
  const Functional phi(m2, f);
  Rng rng(1);
  const Matrix x = random_matrix(2, rng);
  CHECK(std::abs(phi(x) - (f * x).trace()) < 1e-14);
  CHECK(std::abs(phi(m2.coords(x)) - phi(x)) < 1e-12);
  const auto from_values = Functional::from_basis_values(m2, phi.basis_values());
  CHECK(std::abs(from_values(x) - phi(x)) < 1e-12);
}

TEST_CASE("is_positive examples") {
  const auto m2 = full_matrices(2);
  CHECK(is_positive(Functional::normalized_trace(m2)));
  CHECK(is_positive(corner(m2)));
  // φ(a) = a₁₂ is not even Hermitian.
  CHECK_FALSE(is_positive(Functional(m2, oracle::unit(2, 1, 0))));
  CHECK_FALSE(is_positive(Functional(m2, oracle::diag({1.0, -1.0}))));
  const auto d = diagonal_algebra(3);
  CHECK(is_positive(Functional(d, oracle::unit(3, 1, 1))));
}

TEST_CASE("positivity reports the Gram spectrum") {
  const auto m2 = full_matrices(2);
  const auto r = positivity(Functional::normalized_trace(m2));
  CHECK(r.hermitian);
  CHECK(r.positive);
  // Gram of the trace state in an orthonormal basis is I/2.
  CHECK(r.min_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.max_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("variation examples") {
  const auto m2 = full_matrices(2);
  CHECK(variation(Functional::normalized_trace(m2)) == doctest::Approx(1.0).epsilon(1e-12));
  Vector x(2);
  x << 0.6, 0.8 * kI;
  const auto vs = Functional::vector_state(m2, x) * 3.0;
  CHECK(variation(vs) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(variation(Functional(m2, Matrix::Zero(2, 2))) == 0.0);
}

TEST_CASE("variation equals the value at the unit for random positive functionals") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const BlockShape shape[] = {{2, 1}, {1, 1}};
    const auto a = build_algebra(3, random_block_generators(shape, rng));
    const double scale = uniform(rng, 0.1, 10.0);
    const auto phi = Functional::from_density(a, random_density(3, rng)) * scale;
    CHECK(std::abs(variation(phi) - phi(Matrix::Identity(3, 3)).real()) <= 1e-9 * scale);
  }
}

TEST_CASE("gns: corner state on M2 is irreducible") {
  const auto m2 = full_matrices(2);
  const auto g = gns(corner(m2));
  CHECK(g.quotient_dim == 2);
  const auto rep = classify_state(corner(m2));
  CHECK(rep.is_state);
  CHECK(rep.is_pure);
  CHECK(rep.commutant_dim == 1);
}

TEST_CASE("gns: point evaluation on the diagonal algebra is one-dimensional") {
  const auto d = diagonal_algebra(3);
  const Functional phi(d, oracle::unit(3, 2, 2));
  CHECK(gns(phi).quotient_dim == 1);
  CHECK(classify_state(phi).is_pure);
}

TEST_CASE("gns: the trace on M2 is the faithful mixed state") {
  const auto m2 = full_matrices(2);
  const auto phi = Functional::normalized_trace(m2);
  const auto g = gns(phi);
  CHECK(g.quotient_dim == 4);
  const auto r = classify_state(phi);
  CHECK_FALSE(r.is_pure);
  CHECK(r.commutant_dim == 4);
}

TEST_CASE("gns: representation is a *-homomorphism recovering phi") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const BlockShape shape[] = {{2, 1}, {1, 2}};
    const auto a = build_algebra(4, random_block_generators(shape, rng));
    const Vector x = random_unit_vector(4, rng);
    const auto phi = Functional::vector_state(a, x);
    const auto g = gns(phi);
    const ElementCoords s{random_vector(a.dim(), rng)};
    const ElementCoords t{random_vector(a.dim(), rng)};
    const Matrix ms = a.element(s), mt = a.element(t);
    const Matrix ps = g.represent(s), pt = g.represent(t);
    CHECK((g.represent(a.coords(ms * mt)) - ps * pt).norm() <= 1e-9 * (1 + ps.norm() * pt.norm()));
    CHECK((g.represent(a.coords(Matrix(ms.adjoint()))) - ps.adjoint()).norm() <= 1e-9 * (1 + ps.norm()));
    const Complex expect = x.dot(ms * x);
    CHECK(std::abs(g.cyclic_vector.dot(ps * g.cyclic_vector) - expect) <= 1e-9 * (1 + ms.norm()));
    CHECK(std::abs(g.cyclic_vector.dot(g.quotient(s)) - phi(ms)) <= 1e-9 * (1 + ms.norm()));
  }
}

TEST_CASE("classify_state reports non-positive input") {
  const auto m2 = full_matrices(2);
  const auto r = classify_state(Functional(m2, oracle::diag({1.0, -1.0})));
  CHECK_FALSE(r.is_positive);
  CHECK_FALSE(r.is_state);
  CHECK_FALSE(r.is_pure);
}

TEST_CASE("classify_state: positive but not normalised is not a state") {
  const auto m2 = full_matrices(2);
  const auto r = classify_state(corner(m2) * 2.0);
  CHECK(r.is_positive);
  CHECK(r.variation == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(r.is_state);
}

TEST_CASE("decompose_cyclic: the identity representation of M2 is cyclic") {
  const auto m2 = full_matrices(2);
  const auto d = decompose_cyclic(m2.basis());
  CHECK(d.pieces.size() == 1);
  CHECK(d.pieces[0].basis.cols() == 2);
  CHECK(d.null_space.cols() == 0);
}

TEST_CASE("decompose_cyclic: M2 ⊗ 1₂ needs two pieces") {
  const Matrix e12 = oracle::unit(2, 0, 1);
  const Matrix amp = Eigen::kroneckerProduct(e12, Matrix::Identity(2, 2)).eval();
  const auto a = build_algebra(4, std::span<const Matrix>(&amp, 1));
  CHECK(a.dim() == 4);
  const auto d = decompose_cyclic(a.basis(), 7);
  REQUIRE(d.pieces.size() == 2);
  Matrix q(4, 4);
  q << d.pieces[0].basis, d.pieces[1].basis;
  CHECK((q.adjoint() * q - Matrix::Identity(4, 4)).norm() < 1e-9);
  for (const auto& piece : d.pieces)
    for (const auto& b : a.basis()) {
      const Matrix leak = b * piece.basis - piece.basis * (piece.basis.adjoint() * b * piece.basis);
      CHECK(leak.norm() < 1e-9);
    }
}

TEST_CASE("decompose_cyclic reports the common null space") {
  const auto e11 = StarAlgebra::from_spanning_set(3, std::vector<Matrix>{oracle::unit(3, 0, 0)});
  const auto d = decompose_cyclic(e11.basis());
  CHECK(d.pieces.size() == 1);
  CHECK(d.null_space.cols() == 2);
}

TEST_CASE("gn_norm examples") {
  const auto m2 = full_matrices(2);
  CHECK(gn_norm(m2.identity_coords(), m2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gn_norm(m2.coords(oracle::diag({1.0, 3.0})), m2) == doctest::Approx(3.0).epsilon(1e-12));
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = random_matrix(2, rng);
    CHECK(std::abs(gn_norm(m2.coords(x), m2) - oracle::opnorm(x)) <= 1e-10 * oracle::opnorm(x));
  }
}

TEST_CASE("eigen_state_check examples") {
  const Matrix b = oracle::diag({2.0, 5.0});
  Vector e1(2), mix(2);
  e1 << 1.0, 0.0;
  mix << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto r = eigen_state_check(b, e1);
  CHECK(r.is_eigen_state);
  CHECK(std::abs(r.value - 2.0) < 1e-14);
  r = eigen_state_check(b, mix);
  CHECK_FALSE(r.is_eigen_state);
  CHECK(std::abs(r.value - 3.5) < 1e-14);
}
