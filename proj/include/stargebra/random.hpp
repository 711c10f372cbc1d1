#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "stargebra/types.hpp"

// Seeded generators for random test elements. Every randomised routine in the
// library takes an Rng& (or a seed) explicitly; there is no global generator.
namespace stargebra {

using Rng = std::mt19937_64;

Complex random_complex(Rng& rng);

/// Entries i.i.d. standard complex Gaussian.
Matrix random_matrix(Eigen::Index n, Rng& rng);
Vector random_vector(Eigen::Index n, Rng& rng);
Vector random_unit_vector(Eigen::Index n, Rng& rng);

Matrix random_hermitian(Eigen::Index n, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
Matrix random_unitary(Eigen::Index n, Rng& rng);
/// u · diag(eigenvalues) · u* for a random unitary u.
Matrix random_normal(const Vector& eigenvalues, Rng& rng);
/// Positive semidefinite with unit trace.
Matrix random_density(Eigen::Index n, Rng& rng);

/// Simple summand M_d repeated m times in a block-diagonal algebra.
struct BlockShape {
  int size = 1;
  int multiplicity = 1;
};

/// Two random elements of u·(⊕ M_{d_i} ⊗ 1_{m_i})·u* for a random unitary u.
/// Generically they generate the whole block algebra, of dimension Σ d_i².
std::vector<Matrix> random_block_generators(std::span<const BlockShape> blocks, Rng& rng);

/// Random normal matrix whose distinct eigenvalues have the given
/// multiplicities; it generates a commutative algebra of dimension
/// multiplicities.size() (plus one if the identity is not yet in the span).
Matrix random_normal_with_multiplicities(std::span<const int> multiplicities, Rng& rng);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive bounds

}  // namespace stargebra
