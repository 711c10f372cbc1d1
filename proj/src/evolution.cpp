#include "stargebra/evolution.hpp"

#include <cmath>

#include "stargebra/linalg.hpp"

namespace stargebra {

namespace {

// e^{−iθ} − 1 without cancellation for small θ.
Complex expm1_neg_i(double theta) {
  const double s = std::sin(theta / 2.0);
  return {-2.0 * s * s, -std::sin(theta)};
}

}  // namespace

SelfAdjointModel::SelfAdjointModel(Matrix a, double tol) : a_(std::move(a)) {
  constexpr const char* where = "SelfAdjointModel";
  linalg::require_square(a_, where);
  if (!linalg::is_hermitian(a_, tol)) fail_precondition(where, "operator is not Hermitian");
  auto he = linalg::eigh(a_);
  values_ = std::move(he.values);
  vectors_ = std::move(he.vectors);
}

SelfAdjointModel SelfAdjointModel::diagonal_truncation(const std::function<double(int)>& lambda, int modes) {
  if (modes < 1) fail_precondition("SelfAdjointModel", "truncation needs at least one mode");
  Matrix a = Matrix::Zero(modes, modes);
  for (int k = 0; k < modes; ++k) a(k, k) = lambda(k);
  return SelfAdjointModel(std::move(a));
}

Matrix SelfAdjointModel::propagator(double t) const {
  Vector phase(values_.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) phase(i) = std::polar(1.0, -t * values_(i));
  return vectors_ * phase.asDiagonal() * vectors_.adjoint();
}

Vector SelfAdjointModel::evolve(const Vector& x, double t) const {
  if (x.size() != dim()) fail_precondition("evolve", "vector dimension mismatch");
  Vector y = vectors_.adjoint() * x;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) *= std::polar(1.0, -t * values_(i));
  return vectors_ * y;
}

Matrix cayley(const SelfAdjointModel& a) {
  const Matrix e = linalg::identity(a.dim());
  const Matrix& m = a.matrix();
  // (a + i) is invertible for Hermitian a and commutes with (a − i).
  return (m + kI * e).partialPivLu().solve(m - kI * e);
}

Matrix inverse_cayley(const Matrix& u, double tol) {
  constexpr const char* where = "inverse_cayley";
  linalg::require_square(u, where);
  if (!linalg::is_unitary(u, std::max(tol, 1e-10))) fail_precondition(where, "input is not unitary");
  const Vector ev = linalg::eigenvalues(u);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i) - 1.0) <= tol)
      fail_precondition(where, "1 is in the spectrum of u: the inverse transform is unbounded");
  const Matrix e = linalg::identity(u.rows());
  return kI * (e - u).partialPivLu().solve(e + u);
}

Matrix psi_P(const Resolution& p, const ScalarFn& f) {
  Matrix out = Matrix::Zero(p.dim(), p.dim());
  for (size_t i = 0; i < p.size(); ++i) {
    const Complex v = f(p.points[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail_precondition("psi_P", "symbol is infinite or undefined on a support atom");
    out += v * p.projections[i];
  }
  return out;
}

Vector evolve(const SelfAdjointModel& a, const Vector& x, double t) { return a.evolve(x, t); }

double ivp_residual(const SelfAdjointModel& a, const Vector& x, double t, double h) {
  constexpr const char* where = "ivp_residual";
  if (h == 0.0) fail_precondition(where, "step h must be nonzero");
  if (x.size() != a.dim()) fail_precondition(where, "vector dimension mismatch");
  const auto& lam = a.eigenvalues();
  const Vector y = a.eigenvectors().adjoint() * x;
  Vector r(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    // −(e^{−ihλ} − 1)/(ih) − λ, applied to the component of U_t x
    const Complex quotient = -expm1_neg_i(h * lam(i)) / (kI * h);
    r(i) = (quotient - lam(i)) * std::polar(1.0, -t * lam(i)) * y(i);
  }
  return r.norm();
}

}  // namespace stargebra
