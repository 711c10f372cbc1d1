#include "stargebra/commutant.hpp"

#include <algorithm>
#include <cmath>

#include "stargebra/linalg.hpp"
#include "stargebra/spectral_measures.hpp"

namespace stargebra {

namespace {

// kron(a, b) for the vec identity vec(a x b) = (bᵀ ⊗ a) vec(x).
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

}  // namespace

Subspace::Subspace(Eigen::Index rows, Eigen::Index cols, Matrix columns)
    : rows_(rows), cols_(cols), columns_(std::move(columns)) {
  if (columns_.rows() != rows_ * cols_) fail_precondition("Subspace", "column length must equal rows*cols");
}

Subspace Subspace::from_spanning_set(Eigen::Index n, std::span<const Matrix> spanning, double tol) {
  linalg::SpanBuilder sb(n * n, tol);
  for (const auto& m : spanning) {
    if (m.rows() != n || m.cols() != n) fail_precondition("Subspace", "dimension mismatch");
    const double nm = m.norm();
    if (nm > 0) sb.add(linalg::vec(m) / nm);
  }
  return {n, n, sb.basis()};
}

Subspace Subspace::of(const StarAlgebra& a) {
  return {a.ambient_dim(), a.ambient_dim(), a.basis_columns()};
}

std::vector<Matrix> Subspace::basis() const {
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(dim()));
  for (Eigen::Index j = 0; j < dim(); ++j)
    out.push_back(Eigen::Map<const Matrix>(columns_.col(j).data(), rows_, cols_));
  return out;
}

Matrix Subspace::project(const Matrix& x) const {
  const Vector v = Eigen::Map<const Vector>(x.data(), x.size());
  const Vector p = columns_ * (columns_.adjoint() * v);
  return Eigen::Map<const Matrix>(p.data(), rows_, cols_);
}

bool Subspace::contains(const Matrix& x, double tol) const {
  return (x - project(x)).norm() <= tol * std::max(1.0, x.norm());
}

double max_principal_angle(const Subspace& a, const Subspace& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::acos(0.0);
  return linalg::max_principal_angle(a.columns(), b.columns());
}

bool same_span(const Subspace& a, const Subspace& b, double angle_tol) {
  return a.dim() == b.dim() && max_principal_angle(a, b) <= angle_tol;
}

Subspace intertwiners(std::span<const Matrix> s1, std::span<const Matrix> s2, double rel_tol) {
  constexpr const char* where = "intertwiners";
  if (s1.size() != s2.size()) fail_precondition(where, "operator lists differ in length");
  if (s1.empty()) fail_precondition(where, "need at least one operator pair to fix dimensions");
  linalg::require_same_dim(s1, where);
  linalg::require_same_dim(s2, where);
  const auto n1 = s1.front().rows();
  const auto n2 = s2.front().rows();
  const Matrix e1 = linalg::identity(n1);
  const Matrix e2 = linalg::identity(n2);
  // vec(x s₁) = (s₁ᵀ ⊗ e₂) vec x ;  vec(s₂ x) = (e₁ ⊗ s₂) vec x
  Matrix stacked(static_cast<Eigen::Index>(s1.size()) * n1 * n2, n1 * n2);
  // ‖x ↦ xs₁ − s₂x‖ ≤ ‖s₁‖ + ‖s₂‖; the cut is relative to this bound because the
  // stacked map can be pure rounding noise (e.g. for a scalar set).
  double scale = 0.0;
  for (size_t i = 0; i < s1.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n1 * n2, n1 * n2) =
        kron(s1[i].transpose(), e2) - kron(e1, s2[i]);
    scale = std::max(scale, linalg::op_norm(s1[i]) + linalg::op_norm(s2[i]));
  }
  return {n2, n1, linalg::nullspace(stacked, rel_tol, scale)};
}

Subspace commutant(std::span<const Matrix> s, double rel_tol) {
  if (s.empty()) fail_precondition("commutant", "empty set: ambient dimension unknown");
  return intertwiners(s, s, rel_tol);
}

Subspace commutant(const Subspace& s, double rel_tol) {
  // The commutant of the empty set is everything.
  if (s.dim() == 0) return {s.rows(), s.cols(), linalg::identity(s.rows() * s.cols())};
  const auto b = s.basis();
  return commutant(b, rel_tol);
}

Subspace bicommutant(std::span<const Matrix> s, double rel_tol) {
  return commutant(commutant(s, rel_tol), rel_tol);
}

Subspace wstar(std::span<const Matrix> s, double rel_tol) {
  std::vector<Matrix> with_adjoints(s.begin(), s.end());
  for (const auto& x : s) with_adjoints.push_back(x.adjoint());
  return bicommutant(with_adjoints, rel_tol);
}

bool is_maximal_commutative(const StarAlgebra& a, double angle_tol) {
  if (!a.is_commutative()) fail_precondition("is_maximal_commutative", "algebra is not commutative");
  return same_span(commutant(a.basis()), Subspace::of(a), angle_tol);
}

bool projections_span_check(const Subspace& a, double tol) {
  constexpr const char* where = "projections_span_check";
  if (a.rows() != a.cols()) fail_precondition(where, "subspace must consist of square matrices");
  const auto n = a.rows();
  if (!same_span(commutant(commutant(a)), a, tol)) fail_precondition(where, "subspace is not bicommutant-closed");

  std::vector<Matrix> projections;
  for (const auto& b : a.basis()) {
    const auto parts = hermitian_parts(b);
    for (const Matrix* h : {&parts.real, &parts.imag}) {
      if (h->norm() <= tol) continue;
      const auto res = resolve_normal(*h, 1e-8);
      projections.insert(projections.end(), res.projections.begin(), res.projections.end());
    }
  }
  const auto spanned = Subspace::from_spanning_set(n, projections, 1e-8);
  return same_span(spanned, a, tol);
}

CyclicSeparating cyclic_separating_duality(const StarAlgebra& a, const Vector& x, double tol) {
  constexpr const char* where = "cyclic_separating_duality";
  const auto n = a.ambient_dim();
  if (x.size() != n) fail_precondition(where, "vector dimension mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-8) fail_precondition(where, "x must be a unit vector");

  Matrix orbit(n, a.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) orbit.col(i) = a.basis()[static_cast<size_t>(i)] * x;
  const bool cyclic = linalg::numerical_rank(orbit, tol) == n;

  const auto comm = commutant(a.basis());
  bool separating = false;
  if (comm.dim() <= n) {
    Matrix images(n, comm.dim());
    const auto cb = comm.basis();
    for (Eigen::Index j = 0; j < comm.dim(); ++j) images.col(j) = cb[static_cast<size_t>(j)] * x;
    const RealVector s = linalg::singular_values(images);
    separating = s.size() == comm.dim() && s(s.size() - 1) > tol;
  }
  return {cyclic, separating};
}

}  // namespace stargebra
