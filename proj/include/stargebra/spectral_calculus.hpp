#pragma once

#include <functional>
#include <vector>

#include "stargebra/types.hpp"

namespace stargebra {

/// Eigenvalues with algebraic multiplicity.
struct Spectrum {
  std::vector<Complex> eigenvalues;
  double tol = 1e-10;

  double radius() const;
};

/// Hermitian input (within tol) goes to the symmetric solver and yields real
/// eigenvalues; everything else to the general complex solver.
Spectrum spectrum(const Matrix& a, double tol = 1e-10);

/// r_λ(a) = max |λ| over sp(a).
double spectral_radius(const Matrix& a);

/// ‖a^(2^k)‖^(1/2^k) by k squarings. Each power is rescaled to unit operator
/// norm before squaring and the logarithms of the scale factors are carried
/// separately, so the result neither overflows nor underflows.
double spectral_radius_limit(const Matrix& a, int k);

/// Pták function r_σ(a) = r_λ(a*a)^{1/2}.
double ptak(const Matrix& a);

/// Rational function num/den with complex coefficients in ascending degree.
/// On construction both polynomials are factored, common roots cancelled, and
/// the result is held in the form γ·Π(αᵢ − x)·Π(βⱼ − x)⁻¹.
class RationalFn {
 public:
  RationalFn(std::vector<Complex> numerator, std::vector<Complex> denominator);

  const std::vector<Complex>& numerator() const { return num_; }
  const std::vector<Complex>& denominator() const { return den_; }
  Complex gamma() const { return gamma_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<Complex>& poles() const { return poles_; }
  bool is_constant() const { return zeros_.empty() && poles_.empty(); }

  Complex operator()(Complex z) const;

 private:
  std::vector<Complex> num_, den_;
  Complex gamma_;
  std::vector<Complex> zeros_, poles_;
};

/// Roots of Σ cₖ zᵏ (ascending coefficients) via the companion matrix.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending);

/// r(a) = γ·Π(αᵢe − a)·Π(βⱼe − a)⁻¹ by products and linear solves. Rejects
/// constant r and poles within tol·max(1, r_λ(a)) of sp(a).
Matrix rational_apply(const Matrix& a, const RationalFn& r, double tol = 1e-10);

/// b = Σₙ≥₁ C(½, n) aⁿ, so that (e + b)² = e + a. Requires r_λ(a) < 1; stops
/// once a term drops below 1e-14·(1 + ‖a‖) and fails after 10⁴ terms.
Matrix sqrt_series(const Matrix& a, double tol = 1e-10);

/// Unique positive square root of a positive matrix. Eigenvalues in
/// [−tol·‖a‖, 0) are clamped to zero; anything lower is rejected.
Matrix positive_sqrt(const Matrix& a, double tol = 1e-10);

/// |a| = (a*a)^{1/2}.
Matrix abs_value(const Matrix& a, double tol = 1e-10);

struct PolarFactors {
  Matrix unitary;   // u
  Matrix positive;  // |a|
};

/// a = u·|a| for invertible a. The unitary factor comes from the scaled Newton
/// iteration X ← (ζX + (ζX)^{-*})/2 and |a| = u*a.
PolarFactors polar_factorize(const Matrix& a, double tol = 1e-10);

struct OrthogonalParts {
  Matrix plus;   // (|a| + a)/2
  Matrix minus;  // (|a| − a)/2
};

/// a = a₊ − a₋ with a₊a₋ = a₋a₊ = 0, for Hermitian a.
OrthogonalParts orth_decompose(const Matrix& a, double tol = 1e-10);

struct ComplementaryProjections {
  Matrix p;  // (e + u)/2
  Matrix q;  // (e − u)/2
};

/// u = p − q for a reflection u (Hermitian and unitary).
ComplementaryProjections reflection_split(const Matrix& u, double tol = 1e-10);

/// u = (a − iμe)(a + iμe)⁻¹ for Hermitian a with μ > r_λ(a).
Matrix cayley_bounded(const Matrix& a, double mu, double tol = 1e-10);

using ScalarFn = std::function<Complex(Complex)>;

/// f(b) through a unitary diagonalisation of the normal matrix b. Rejects
/// non-normal b (‖b*b − bb*‖ > tol·max(‖b‖², 1)) and non-finite f values.
Matrix functional_calculus(const Matrix& b, const ScalarFn& f, double tol = 1e-10);

}  // namespace stargebra
