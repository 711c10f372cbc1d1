#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stargebra/gelfand.hpp"
#include "stargebra/spectral_calculus.hpp"
#include "stargebra/types.hpp"

namespace stargebra {

/// A finite resolution of the identity: mutually orthogonal projections
/// summing to e, each labelled by a point. Labels are complex spectral values,
/// or character indices k stored as (k, 0) for resolutions of representations.
struct Resolution {
  std::vector<Complex> points;
  std::vector<Matrix> projections;
  double tol = 1e-8;

  size_t size() const { return points.size(); }
  Eigen::Index dim() const { return projections.empty() ? 0 : projections.front().rows(); }
  std::vector<Eigen::Index> ranks() const;
  /// P(ω) = Σ_{i∈ω} Pᵢ for a set of point indices.
  Matrix measure(std::span<const int> omega) const;
  /// Largest violation of: Pᵢ Hermitian idempotent, PᵢPⱼ = 0 (i ≠ j), ΣPᵢ = e.
  double defect() const;
};

/// Spectral resolution b = Σ λᵢPᵢ of a normal matrix. Eigenvalues within
/// tol·max(1, ‖b‖) of each other are merged (single linkage) and labelled by
/// their centroid.
Resolution resolve_normal(const Matrix& b, double tol = 1e-8);

/// ‖b − Σ λᵢPᵢ‖.
double reconstruction_error(const Matrix& b, const Resolution& p);

/// π_P(f) = Σ f(λᵢ)Pᵢ.
Matrix pi_P(const Resolution& p, const ScalarFn& f);

struct VectorMeasure {
  std::vector<Complex> points;
  std::vector<double> weights;  // ‖Pᵢx‖²

  double total() const;
  Complex integrate(const ScalarFn& f) const;
};

VectorMeasure vector_measure(const Resolution& p, const Vector& x);

/// f(P): projections whose image labels coincide are summed, so that
/// π_{f(P)}(g) = π_P(g∘f).
Resolution image_resolution(const Resolution& p, const ScalarFn& f);

/// Spectral resolution of a commutative non-degenerate representation, given
/// by the images rep[i] = π(bᵢ) of the algebra's basis. The projection labelled
/// k carries the character chars.characters[k]: π(a) = Σ τ_k(a) P_k.
Resolution resolve_representation(std::span<const Matrix> rep, const CharacterSet& chars,
                                  std::uint64_t seed = 0, double tol = 1e-8);

struct AtomCheck {
  bool is_atom = false;
  Complex point;
  Matrix eigenspace;  // orthonormal columns spanning ran P({λ})
};

/// P({λ}) ≠ 0 exactly at eigenvalues of b, and its range is the eigenspace.
/// A λ away from every stored point is not an atom (P({λ}) = 0).
AtomCheck atom_eigen_check(const Resolution& p, const Matrix& b, Complex lambda, double tol = 1e-8);

/// For normal n₁, n₂ and a with a·n₁ = n₂·a, checks a·n₁* = n₂*·a within
/// 10·tol·‖a‖·max(‖n₁‖, ‖n₂‖). Rejects a that does not intertwine.
bool fuglede_check(const Matrix& n1, const Matrix& n2, const Matrix& a, double tol = 1e-10);

struct SpectralRepresentation {
  Resolution resolution;
  VectorMeasure mu;           // ⟨P c, c⟩ over the character labels
  std::vector<int> support;   // character indices with μ > 0
  Matrix isometry;            // V with V·rep(a) = diag(â|supp)·V
};

/// Spatial equivalence of a cyclic commutative representation with the
/// multiplication representation on ℓ²(μ), μ = ⟨Pc, c⟩. Coordinates on ℓ²(μ)
/// are taken in the orthonormal basis e_k/√μ_k.
SpectralRepresentation spectral_representation(std::span<const Matrix> rep, const Vector& c,
                                               const CharacterSet& chars, std::uint64_t seed = 0,
                                               double tol = 1e-9);

}  // namespace stargebra
