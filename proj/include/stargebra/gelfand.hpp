#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stargebra/algebra_core.hpp"
#include "stargebra/random.hpp"
#include "stargebra/states_gns.hpp"

namespace stargebra {

/// Joint eigenspaces of a commuting family of normal matrices whose span is
/// closed under adjoints. Each returned block (orthonormal columns) is a
/// maximal subspace on which every matrix acts as a scalar.
///
/// A random Hermitian combination of the family is diagonalised and its
/// eigenvalue clusters are refined recursively with fresh combinations until
/// every member is scalar on every block; a block that refuses to split after
/// 8 fresh combinations is a numerical failure.
std::vector<Matrix> joint_eigenspaces(std::span<const Matrix> family, Rng& rng, double tol = 1e-8);

/// The characters (nonzero multiplicative linear functionals) of a
/// commutative *-algebra.
struct CharacterSet {
  StarAlgebra algebra;
  std::vector<Functional> characters;
  Matrix values;                                // values(k, i) = τ_k(bᵢ)
  Matrix joint_diagonalizer;                    // unitary, columns grouped by block
  std::vector<std::vector<int>> block_pattern;  // columns of joint_diagonalizer per character

  Eigen::Index size() const { return values.rows(); }
};

/// Characters of a commutative algebra. τ(a) = tr(P_τ a)/rank(P_τ) where P_τ
/// projects onto the joint eigenspaces carrying τ. Blocks on which the
/// algebra vanishes (non-unital algebras) carry no character. Characters are
/// sorted by their values on the basis, compared entry by entry by argument in
/// [0, 2π) and then modulus, so the order does not depend on the seed; for
/// ℂ[ℤ/N] it is the DFT order τ_k(δ₁) = e^{2πik/N}.
CharacterSet characters(const StarAlgebra& algebra, std::uint64_t seed = 0);

/// â = (τ(a))_τ.
Vector gelfand_transform(const ElementCoords& a, const CharacterSet& chars);

struct DiscreteMeasure {
  std::vector<int> support;     // character indices
  std::vector<double> weights;  // same length as support
};

/// The probability weights μ_τ with ψ(a) = Σ_τ â(τ) μ_τ, solved from the
/// (invertible) character matrix. Weights below 1e-12 in modulus are left out
/// of the support.
DiscreteMeasure bochner_measure(const Functional& psi, const CharacterSet& chars);
DiscreteMeasure bochner_measure(const Functional& psi, std::uint64_t seed = 0);

/// Convolution inverse in ℂ[ℤ/N] via the DFT: the characters of ℤ/N are
/// τ_k(δ₁) = e^{2πik/N}; a is invertible iff â vanishes nowhere.
GroupCoeffs wiener_inverse_demo(std::span<const Complex> coeffs, double tol = 1e-10);

/// â(k) = Σₙ a(n) e^{2πikn/N}.
std::vector<Complex> cyclic_fourier(std::span<const Complex> coeffs);

}  // namespace stargebra
