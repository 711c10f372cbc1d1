#pragma once

#include <optional>
#include <span>
#include <vector>

#include "stargebra/types.hpp"

namespace stargebra {

/// Coordinates of an element in the orthonormal basis of a StarAlgebra.
struct ElementCoords {
  Vector values;
};

/// A *-closed subalgebra of n×n matrices, stored as a basis that is
/// orthonormal for the Hilbert–Schmidt inner product tr(y* x).
///
/// "Unital" means the ambient identity lies in the span. An algebra such as
/// span{E₁₁} has a unit of its own but is not unital in this sense; unitize()
/// adjoins the ambient identity.
class StarAlgebra {
 public:
  /// Orthonormalises a spanning set and verifies *-closure and product
  /// closure within tol. Throws Precondition if the span is not a *-algebra.
  static StarAlgebra from_spanning_set(Eigen::Index ambient_dim, std::span<const Matrix> spanning,
                                       double tol = 1e-10);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  bool unital() const { return unital_; }
  double tol() const { return tol_; }

  ElementCoords coords(const Matrix& a) const;
  Matrix element(const ElementCoords& c) const;
  Matrix project(const Matrix& a) const;
  /// Hilbert–Schmidt distance from a to the span.
  double distance(const Matrix& a) const;
  bool contains(const Matrix& a) const;
  /// Coordinates of the ambient identity; throws if the algebra is not unital.
  ElementCoords identity_coords() const;

  /// Largest distance from span of any bᵢbⱼ or bᵢ* (both normalised by the
  /// unit-norm basis, so this is an absolute residual).
  double closure_residual() const;
  bool is_commutative() const;

  /// n² × dim matrix whose columns are vec(bᵢ).
  Matrix basis_columns() const;

 private:
  StarAlgebra(Eigen::Index n, std::vector<Matrix> basis, double tol);

  Eigen::Index ambient_dim_;
  std::vector<Matrix> basis_;
  double tol_;
  bool unital_;
};

/// Default tolerance for closure decisions: 1e-10 × max(1, largest entry).
double default_closure_tol(std::span<const Matrix> generators);

/// Smallest unital *-subalgebra of M_n containing the generators. Closure
/// alternates adjoints and pairwise products with Gram–Schmidt until a full
/// pass adds no direction whose residual exceeds tol.
StarAlgebra build_algebra(Eigen::Index n, std::span<const Matrix> generators,
                          std::optional<double> tol = std::nullopt);

/// Returns A unchanged if the ambient identity is already in its span,
/// otherwise the algebra spanned by A and the identity.
StarAlgebra unitize(const StarAlgebra& a);

struct HermitianParts {
  Matrix real;  // (a + a*)/2
  Matrix imag;  // (a − a*)/(2i)
};

HermitianParts hermitian_parts(const Matrix& a);

/// Finite group given by a 0-indexed Cayley table (row g, column h ↦ gh).
class FiniteGroup {
 public:
  static FiniteGroup cyclic(int order);
  /// Validates closure, associativity, identity and inverses; throws Parse.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int g, int h) const { return table_[static_cast<size_t>(g)][static_cast<size_t>(h)]; }
  int identity() const { return identity_; }
  int inverse(int g) const { return inverse_[static_cast<size_t>(g)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  FiniteGroup() = default;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// Element of ℂ[G] as a coefficient vector indexed by group element.
using GroupCoeffs = std::vector<Complex>;

struct GroupRingSpec {
  FiniteGroup group;
  GroupCoeffs coefficients;  // may be empty
};

/// ℂ[G] realised by its left-regular representation on ℂ^|G|.
struct GroupRing {
  FiniteGroup group;
  StarAlgebra algebra;
  std::vector<Matrix> embedding;  // embedding[g] = δ_g, a permutation matrix

  Matrix element(std::span<const Complex> coeffs) const;
};

GroupRing group_ring(const FiniteGroup& group);
inline GroupRing group_ring(const GroupRingSpec& spec) { return group_ring(spec.group); }

/// (a ∗ b)(k) = Σ_{gh = k} a(g) b(h).
GroupCoeffs convolve(const FiniteGroup& group, std::span<const Complex> a, std::span<const Complex> b);
/// a*(g) = conj(a(g⁻¹)).
GroupCoeffs involution(const FiniteGroup& group, std::span<const Complex> a);
/// Σ_g |a(g)|.
double ell1_norm(std::span<const Complex> a);

/// For ℂ[ℤ] with the weighted norm |a| = Σ|a(n)|γⁿ, returns
/// |τ(δ₋ₙ)| / |δ₋ₙ| = γⁿ for any Hermitian character τ: the ratio is unbounded
/// in n, so τ is discontinuous although contractive on Hermitian elements.
double counterexample_ratio(double gamma, int n);

}  // namespace stargebra
