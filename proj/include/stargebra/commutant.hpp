#pragma once

#include <span>
#include <vector>

#include "stargebra/algebra_core.hpp"
#include "stargebra/types.hpp"

namespace stargebra {

/// Linear space of rows×cols matrices with a Hilbert–Schmidt orthonormal basis,
/// stored as the columns of vec-coordinates.
class Subspace {
 public:
  Subspace(Eigen::Index rows, Eigen::Index cols, Matrix columns);
  static Subspace from_spanning_set(Eigen::Index n, std::span<const Matrix> spanning, double tol = 1e-10);
  static Subspace of(const StarAlgebra& a);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  Eigen::Index dim() const { return columns_.cols(); }
  const Matrix& columns() const { return columns_; }
  std::vector<Matrix> basis() const;

  Matrix project(const Matrix& x) const;
  bool contains(const Matrix& x, double tol = 1e-9) const;

 private:
  Eigen::Index rows_, cols_;
  Matrix columns_;
};

/// Largest principal angle between two subspaces (π/2 if dimensions differ).
double max_principal_angle(const Subspace& a, const Subspace& b);
bool same_span(const Subspace& a, const Subspace& b, double angle_tol = 1e-10);

/// {x : x·s₁ᵢ = s₂ᵢ·x for all i}, the joint null space of the stacked maps
/// x ↦ x s₁ᵢ − s₂ᵢ x. Singular values ≤ rel_tol·σ_max count as zero.
Subspace intertwiners(std::span<const Matrix> s1, std::span<const Matrix> s2, double rel_tol = 1e-10);

/// S′ = {x : xs = sx for all s ∈ S}.
Subspace commutant(std::span<const Matrix> s, double rel_tol = 1e-10);
Subspace commutant(const Subspace& s, double rel_tol = 1e-10);
/// S″ by two nested commutant calls.
Subspace bicommutant(std::span<const Matrix> s, double rel_tol = 1e-10);
/// W*(S) = (S ∪ S*)″.
Subspace wstar(std::span<const Matrix> s, double rel_tol = 1e-10);

/// True iff A′ = A. Rejects non-commutative input.
bool is_maximal_commutative(const StarAlgebra& a, double angle_tol = 1e-8);

/// For a von Neumann algebra A (A″ = A, checked), collects the spectral
/// projections of the Hermitian parts of its basis and tests whether they span A.
bool projections_span_check(const Subspace& a, double tol = 1e-8);

struct CyclicSeparating {
  bool cyclic_for_algebra;
  bool separating_for_commutant;
};

/// x is cyclic for A exactly when it is separating for A′; both sides are
/// decided independently (Krylov rank and injectivity of c ↦ c·x on A′).
CyclicSeparating cyclic_separating_duality(const StarAlgebra& a, const Vector& x, double tol = 1e-9);

}  // namespace stargebra
