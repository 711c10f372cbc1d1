#include "stargebra/spectral_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stargebra/linalg.hpp"

namespace stargebra {

namespace {

void require_hermitian(const Matrix& a, double tol, const char* where) {
  linalg::require_square(a, where);
  if (!linalg::is_hermitian(a, tol)) fail_precondition(where, "input is not Hermitian");
}

std::vector<Complex> strip_leading_zeros(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex{0.0, 0.0}) c.pop_back();
  return c;
}

}  // namespace

double Spectrum::radius() const {
  double r = 0.0;
  for (const auto& z : eigenvalues) r = std::max(r, std::abs(z));
  return r;
}

Spectrum spectrum(const Matrix& a, double tol) {
  linalg::require_square(a, "spectrum");
  Spectrum sp;
  sp.tol = tol;
  if (linalg::is_hermitian(a, tol)) {
    const auto he = linalg::eigh(a);
    for (Eigen::Index i = 0; i < he.values.size(); ++i) sp.eigenvalues.emplace_back(he.values(i), 0.0);
  } else {
    const Vector ev = linalg::eigenvalues(a);
    sp.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  }
  return sp;
}

double spectral_radius(const Matrix& a) { return spectrum(a).radius(); }

double spectral_radius_limit(const Matrix& a, int k) {
  linalg::require_square(a, "spectral_radius_limit");
  if (k < 1) fail_precondition("spectral_radius_limit", "k must be >= 1");
  // Invariant: a^(2^i) = exp(log_scale) · x.
  Matrix x = a;
  double log_scale = 0.0;
  for (int i = 0; i < k; ++i) {
    const double s = linalg::op_norm(x);
    if (s == 0.0) return 0.0;
    x *= 1.0 / s;  // complex division by s would overflow for huge s
    log_scale += std::log(s);
    x = x * x;
    log_scale *= 2.0;
  }
  const double s = linalg::op_norm(x);
  if (s == 0.0) return 0.0;
  return std::exp((log_scale + std::log(s)) / std::ldexp(1.0, k));
}

double ptak(const Matrix& a) {
  linalg::require_square(a, "ptak");
  const auto he = linalg::eigh(a.adjoint() * a);
  return std::sqrt(std::max(0.0, he.values.maxCoeff()));
}

// ---------------------------------------------------------------------------
// rational functions

std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending) {
  const auto c = strip_leading_zeros(ascending);
  if (c.size() <= 1) return {};
  const auto d = static_cast<Eigen::Index>(c.size() - 1);
  Matrix companion = Matrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<size_t>(i)] / c.back();
  const Vector roots = linalg::eigenvalues(companion);
  return {roots.data(), roots.data() + roots.size()};
}

RationalFn::RationalFn(std::vector<Complex> numerator, std::vector<Complex> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  const auto num = strip_leading_zeros(num_);
  const auto den = strip_leading_zeros(den_);
  if (den.empty()) fail_precondition("RationalFn", "denominator is identically zero");
  if (num.empty()) fail_precondition("RationalFn", "rational function is constant (zero numerator)");

  zeros_ = polynomial_roots(num);
  poles_ = polynomial_roots(den);
  for (auto p = poles_.begin(); p != poles_.end();) {
    auto z = std::find_if(zeros_.begin(), zeros_.end(), [&](Complex w) {
      return std::abs(w - *p) <= 1e-8 * std::max(1.0, std::abs(*p));
    });
    if (z != zeros_.end()) {
      zeros_.erase(z);
      p = poles_.erase(p);
    } else {
      ++p;
    }
  }
  // c_m Π(x − α) = c_m (−1)^m Π(α − x)
  const double sign_num = (num.size() - 1) % 2 == 0 ? 1.0 : -1.0;
  const double sign_den = (den.size() - 1) % 2 == 0 ? 1.0 : -1.0;
  gamma_ = (num.back() * sign_num) / (den.back() * sign_den);
}

Complex RationalFn::operator()(Complex z) const {
  Complex v = gamma_;
  for (const auto& alpha : zeros_) v *= alpha - z;
  for (const auto& beta : poles_) v /= beta - z;
  return v;
}

Matrix rational_apply(const Matrix& a, const RationalFn& r, double tol) {
  constexpr const char* where = "rational_apply";
  linalg::require_square(a, where);
  if (r.is_constant()) fail_precondition(where, "rational function is constant");
  const auto sp = spectrum(a, tol);
  const double clearance = tol * std::max(1.0, sp.radius());
  for (const auto& beta : r.poles())
    for (const auto& lambda : sp.eigenvalues)
      if (std::abs(beta - lambda) <= clearance) fail_precondition(where, "pole on the spectrum");

  const auto n = a.rows();
  const Matrix e = linalg::identity(n);
  Matrix result = r.gamma() * e;
  // Alternate zero factors and pole solves to keep intermediate magnitudes moderate.
  const auto& zs = r.zeros();
  const auto& ps = r.poles();
  for (size_t i = 0; i < std::max(zs.size(), ps.size()); ++i) {
    if (i < zs.size()) result = (zs[i] * e - a) * result;
    if (i < ps.size()) {
      Eigen::PartialPivLU<Matrix> lu(ps[i] * e - a);
      if (!(lu.rcond() > 1e2 * std::numeric_limits<double>::epsilon()))
        fail_numerical(where, "singular solve: (βe − a) is ill-conditioned");
      result = lu.solve(result);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// square roots and decompositions

Matrix sqrt_series(const Matrix& a, double tol) {
  constexpr const char* where = "sqrt_series";
  linalg::require_square(a, where);
  if (spectral_radius(a) >= 1.0) fail_precondition(where, "spectral radius of a must be < 1");
  const double na = linalg::op_norm(a);
  const double stop = 1e-14 * (1.0 + na);
  constexpr int kMaxTerms = 10000;

  Matrix b = Matrix::Zero(a.rows(), a.cols());
  Matrix power = a;
  double coef = 0.5;  // C(½, 1)
  bool converged = false;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const Matrix term = coef * power;
    b += term;
    if (term.norm() < stop) {
      converged = true;
      break;
    }
    power = power * a;
    coef *= (0.5 - n) / (n + 1.0);
  }
  if (!converged) fail_numerical(where, "series did not converge within 10^4 terms");

  const Matrix e = linalg::identity(a.rows());
  const double residual = linalg::op_norm((e + b) * (e + b) - (e + a));
  if (residual > tol * (1.0 + na))
    fail_numerical(where, "(e + b)^2 differs from e + a by " + std::to_string(residual));
  return b;
}

Matrix positive_sqrt(const Matrix& a, double tol) {
  constexpr const char* where = "positive_sqrt";
  require_hermitian(a, tol, where);
  const double na = linalg::op_norm(a);
  auto he = linalg::eigh(a);
  for (Eigen::Index i = 0; i < he.values.size(); ++i) {
    double& lambda = he.values(i);
    if (lambda < -tol * na) fail_precondition(where, "input is not positive (eigenvalue " + std::to_string(lambda) + ")");
    lambda = std::sqrt(std::max(lambda, 0.0));
  }
  return he.vectors * he.values.cast<Complex>().asDiagonal() * he.vectors.adjoint();
}

Matrix abs_value(const Matrix& a, double tol) {
  linalg::require_square(a, "abs_value");
  return positive_sqrt(a.adjoint() * a, tol);
}

PolarFactors polar_factorize(const Matrix& a, double tol) {
  constexpr const char* where = "polar_factorize";
  linalg::require_square(a, where);
  const RealVector s = linalg::singular_values(a);
  if (!(s(s.size() - 1) > tol * s(0))) fail_precondition(where, "input is not invertible");

  Matrix x = a;
  bool scaled = true;
  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix x_inv_adj = x.inverse().adjoint();
    const double zeta = scaled ? std::sqrt(x_inv_adj.norm() / x.norm()) : 1.0;
    const Matrix next = (zeta * x + x_inv_adj / zeta) / 2.0;
    const double diff = (next - x).norm() / next.norm();
    x = next;
    if (diff < 1e-2) scaled = false;
    // Quadratic convergence: once the update stops shrinking we are at rounding level.
    if (diff < 1e-14 || (!scaled && diff >= previous)) break;
    previous = diff;
  }
  Matrix p = x.adjoint() * a;
  p = (p + p.adjoint()) / 2.0;
  if (linalg::unitarity_defect(x) > tol) fail_numerical(where, "Newton iteration lost unitarity");
  return {x, p};
}

OrthogonalParts orth_decompose(const Matrix& a, double tol) {
  constexpr const char* where = "orth_decompose";
  require_hermitian(a, tol, where);
  const auto he = linalg::eigh(a);
  const Matrix abs_a = he.vectors * he.values.cwiseAbs().cast<Complex>().asDiagonal() * he.vectors.adjoint();
  const Matrix h = (a + a.adjoint()) / 2.0;
  return {(abs_a + h) / 2.0, (abs_a - h) / 2.0};
}

ComplementaryProjections reflection_split(const Matrix& u, double tol) {
  constexpr const char* where = "reflection_split";
  linalg::require_square(u, where);
  if (linalg::hermiticity_defect(u) > tol || linalg::unitarity_defect(u) > tol)
    fail_precondition(where, "input is not a reflection (Hermitian unitary)");
  const Matrix e = linalg::identity(u.rows());
  return {(e + u) / 2.0, (e - u) / 2.0};
}

Matrix cayley_bounded(const Matrix& a, double mu, double tol) {
  constexpr const char* where = "cayley_bounded";
  require_hermitian(a, tol, where);
  if (!(mu > spectral_radius(a))) fail_precondition(where, "mu must exceed the spectral radius of a");
  const Matrix e = linalg::identity(a.rows());
  // The factors commute, so (a − iμe)(a + iμe)⁻¹ = (a + iμe)⁻¹(a − iμe).
  return (a + kI * mu * e).partialPivLu().solve(a - kI * mu * e);
}

Matrix functional_calculus(const Matrix& b, const ScalarFn& f, double tol) {
  constexpr const char* where = "functional_calculus";
  linalg::require_square(b, where);
  if (!linalg::is_normal(b, tol)) fail_precondition(where, "input is not normal");
  const auto diag = linalg::diagonalize_normal(b);
  Vector fv(diag.eigenvalues.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    fv(i) = f(diag.eigenvalues(i));
    if (!std::isfinite(fv(i).real()) || !std::isfinite(fv(i).imag()))
      fail_precondition(where, "f is undefined at a spectral point");
  }
  return diag.unitary * fv.asDiagonal() * diag.unitary.adjoint();
}

}  // namespace stargebra
