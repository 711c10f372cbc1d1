#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stargebra/algebra_core.hpp"
#include "stargebra/types.hpp"

namespace stargebra {

/// Linear functional on a StarAlgebra, stored as the trace-pairing matrix F
/// with φ(a) = tr(F·a). Positivity is a checked property, not an invariant.
class Functional {
 public:
  Functional(StarAlgebra algebra, Matrix coeff);

  /// The functional taking the given values on the algebra's basis.
  static Functional from_basis_values(const StarAlgebra& algebra, const Vector& values);
  /// φ(a) = tr(ρa).
  static Functional from_density(const StarAlgebra& algebra, const Matrix& rho);
  /// φ(a) = ⟨ax, x⟩.
  static Functional vector_state(const StarAlgebra& algebra, const Vector& x);
  /// φ(a) = tr(a)/n.
  static Functional normalized_trace(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return algebra_; }
  const Matrix& coeff() const { return coeff_; }

  Complex operator()(const Matrix& a) const;
  Complex operator()(const ElementCoords& c) const;
  /// (φ(b₀), …, φ(b_{d−1})).
  Vector basis_values() const;

  Functional operator+(const Functional& other) const;
  Functional operator*(Complex s) const;

 private:
  StarAlgebra algebra_;
  Matrix coeff_;
};

/// G_ij = φ(bᵢ* bⱼ), so that φ(a*a) = c* G c for a = Σ cⱼ bⱼ.
Matrix gram(const Functional& phi);

struct PositivityReport {
  bool hermitian;  // G Hermitian within tol
  bool positive;
  double min_eigenvalue;
  double max_eigenvalue;
};

PositivityReport positivity(const Functional& phi, double tol = 1e-10);
/// φ(a*a) ≥ 0 on the algebra, decided on the Gram matrix. A functional whose
/// Gram matrix is not Hermitian is reported as not positive.
bool is_positive(const Functional& phi, double tol = 1e-10);

/// v(φ) = sup |φ(a)|²/φ(a*a): the largest generalised Rayleigh quotient of the
/// rank-one form |φ|² against the Gram form on its range. v(0) = 0.
double variation(const Functional& phi, double tol = 1e-10);

struct GnsResult {
  Eigen::Index quotient_dim = 0;
  std::vector<Matrix> rep;  // rep[i] = π_φ(bᵢ)
  Vector cyclic_vector;     // c_φ with ⟨q(a), c_φ⟩ = φ(a)
  Matrix quotient_map;      // coordinates ↦ quotient coordinates
  Matrix gram;

  Matrix represent(const ElementCoords& a) const;
  Vector quotient(const ElementCoords& a) const;
};

/// GNS construction: the Gram matrix is eigendecomposed, eigenvalues at or
/// below 1e-10·λ_max are discarded as the isotropic subspace, and the algebra
/// acts on the remaining directions by left multiplication.
GnsResult gns(const Functional& phi, double tol = 1e-10);

struct StateReport {
  bool is_positive = false;
  double variation = 0.0;
  bool is_state = false;
  bool is_pure = false;
  Eigen::Index commutant_dim = 0;
};

/// Purity is decided by the commutant of the GNS representation: a positive
/// functional is pure exactly when that commutant is one-dimensional.
StateReport classify_state(const Functional& phi, double tol = 1e-10);

struct CyclicPiece {
  Matrix basis;  // m × k, orthonormal columns spanning an invariant subspace
  Vector cyclic_vector;
};

struct CyclicDecomposition {
  std::vector<CyclicPiece> pieces;
  Matrix null_space;  // common null vectors of the representation
};

/// Splits a *-representation into mutually orthogonal cyclic pieces by
/// repeated Krylov closure; the common null space is reported separately.
CyclicDecomposition decompose_cyclic(std::span<const Matrix> rep, std::uint64_t seed = 0, double tol = 1e-9);

/// sup over vector states of ψ(a*a)^{1/2}, attained at the top eigenvector of a*a.
double gn_norm(const ElementCoords& a, const StarAlgebra& algebra);

struct EigenStateCheck {
  bool is_eigen_state;
  Complex value;  // ⟨bx, x⟩
};

/// The vector state of x lies in E(b) iff |⟨bx,x⟩|² = ⟨b*bx,x⟩, i.e. iff x is
/// an eigenvector of b.
EigenStateCheck eigen_state_check(const Matrix& b, const Vector& x, double tol = 1e-9);

}  // namespace stargebra
