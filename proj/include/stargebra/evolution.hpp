#pragma once

#include <functional>

#include "stargebra/spectral_measures.hpp"
#include "stargebra/types.hpp"

namespace stargebra {

/// A Hermitian matrix, possibly the N-mode truncation of an unbounded
/// diagonal operator with eigenvalues λ_k growing in k.
class SelfAdjointModel {
 public:
  explicit SelfAdjointModel(Matrix a, double tol = 1e-10);
  /// diag(λ(0), …, λ(N−1)).
  static SelfAdjointModel diagonal_truncation(const std::function<double(int)>& lambda, int modes);

  const Matrix& matrix() const { return a_; }
  Eigen::Index dim() const { return a_.rows(); }
  /// Eigenvalues (ascending) and the unitary that diagonalises a.
  const RealVector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }

  /// U_t = exp(−ita) = Σ exp(−itλ) P(λ).
  Matrix propagator(double t) const;
  Vector evolve(const Vector& x, double t) const;

 private:
  Matrix a_;
  RealVector values_;
  Matrix vectors_;
};

/// u = (a − i)(a + i)⁻¹.
Matrix cayley(const SelfAdjointModel& a);

/// a = i(e + u)(e − u)⁻¹; rejects u with 1 within tol of its spectrum.
Matrix inverse_cayley(const Matrix& u, double tol = 1e-10);

/// Ψ_P(f) = Σ f(λᵢ)Pᵢ for symbols that may take arbitrarily large values; at
/// finite rank every domain is the whole space.
Matrix psi_P(const Resolution& p, const ScalarFn& f);

Vector evolve(const SelfAdjointModel& a, const Vector& x, double t);

/// ‖−(1/(ih))(U_{t+h}x − U_t x) − a·U_t x‖, evaluated in the eigenbasis so the
/// difference U_{t+h} − U_t does not cancel catastrophically for small h.
double ivp_residual(const SelfAdjointModel& a, const Vector& x, double t, double h);

}  // namespace stargebra
