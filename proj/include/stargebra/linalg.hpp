#pragma once

#include <span>
#include <string>
#include <vector>

#include "stargebra/types.hpp"

// Dense linear-algebra helpers shared by every module. Norms are operator
// (largest singular value) norms unless the name says otherwise.
namespace stargebra::linalg {

double op_norm(const Matrix& a);
RealVector singular_values(const Matrix& a);

bool all_finite(const Matrix& a);
void require_finite(const Matrix& a, const std::string& where);
void require_square(const Matrix& a, const std::string& where);
void require_same_dim(std::span<const Matrix> mats, const std::string& where);

Matrix identity(Eigen::Index n);
Matrix adjoint(const Matrix& a);

double hermiticity_defect(const Matrix& a);
double normality_defect(const Matrix& b);
double unitarity_defect(const Matrix& u);

/// ‖a − a*‖ ≤ tol·‖a‖.
bool is_hermitian(const Matrix& a, double tol);
/// ‖b*b − bb*‖ ≤ tol·max(‖b‖², 1).
bool is_normal(const Matrix& b, double tol);
/// ‖u*u − e‖ ≤ tol.
bool is_unitary(const Matrix& u, double tol);

/// Hilbert–Schmidt inner product ⟨x, y⟩ = tr(y* x), linear in x.
Complex hs_inner(const Matrix& x, const Matrix& y);

/// Column-major vectorisation and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Eigen::Index n);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

/// Eigendecomposition of the Hermitian part (a + a*)/2.
HermitianEigen eigh(const Matrix& a);

struct UnitaryDiagonalization {
  Vector eigenvalues;
  Matrix unitary;  // b ≈ unitary · diag(eigenvalues) · unitary*
};

/// Unitary diagonalisation of a normal matrix. Hermitian input is routed to
/// the symmetric solver, everything else goes through the complex Schur form
/// (whose triangular factor is diagonal for normal input).
UnitaryDiagonalization diagonalize_normal(const Matrix& b);

/// Eigenvalues with algebraic multiplicity (general complex solver).
Vector eigenvalues(const Matrix& a);

/// Orthonormal basis (columns) of the null space of m; a singular value counts
/// as zero when it is ≤ rel_tol·scale, with scale = σ_max unless given. Pass the
/// natural scale of the problem when m itself may be rounding noise.
Matrix nullspace(const Matrix& m, double rel_tol, double scale = -1.0);
Eigen::Index numerical_rank(const Matrix& m, double rel_tol);

/// Largest principal angle between the column spans of two matrices with
/// orthonormal columns; π/2 when the dimensions differ. Computed from sines so
/// that angles near zero keep full relative accuracy.
double max_principal_angle(const Matrix& q1, const Matrix& q2);

/// Incremental orthonormal basis of a subspace of ℂᴺ (Gram–Schmidt with one
/// re-orthogonalisation pass).
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index ambient, double threshold);

  /// Adds the direction of v if its residual after projection exceeds the
  /// threshold. Returns true when the span grew.
  bool add(const Vector& v);
  Vector residual(const Vector& v) const;

  Eigen::Index size() const { return static_cast<Eigen::Index>(cols_.size()); }
  Matrix basis() const;

 private:
  Eigen::Index ambient_;
  double threshold_;
  std::vector<Vector> cols_;
};

/// Single-linkage clusters of points: two points share a cluster when a chain
/// of neighbours at distance ≤ threshold connects them. Clusters are ordered by
/// their smallest member index.
std::vector<std::vector<int>> cluster_points(std::span<const Complex> points, double threshold);

/// Greedy multiset matching distance: pairs are matched in order of increasing
/// distance, and the largest matched distance is returned. Sizes must agree.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace stargebra::linalg
