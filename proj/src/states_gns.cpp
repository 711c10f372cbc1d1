#include "stargebra/states_gns.hpp"

#include <algorithm>
#include <cmath>

#include "stargebra/commutant.hpp"
#include "stargebra/linalg.hpp"
#include "stargebra/random.hpp"

namespace stargebra {

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(StarAlgebra algebra, Matrix coeff) : algebra_(std::move(algebra)), coeff_(std::move(coeff)) {
  const auto n = algebra_.ambient_dim();
  if (coeff_.rows() != n || coeff_.cols() != n) fail_precondition("Functional", "coefficient matrix dimension mismatch");
  linalg::require_finite(coeff_, "Functional");
}

Functional Functional::from_basis_values(const StarAlgebra& algebra, const Vector& values) {
  if (values.size() != algebra.dim()) fail_precondition("Functional", "value count differs from algebra dimension");
  Matrix f = Matrix::Zero(algebra.ambient_dim(), algebra.ambient_dim());
  for (Eigen::Index i = 0; i < algebra.dim(); ++i) f += values(i) * algebra.basis()[static_cast<size_t>(i)].adjoint();
  return {algebra, f};
}

Functional Functional::from_density(const StarAlgebra& algebra, const Matrix& rho) { return {algebra, rho}; }

Functional Functional::vector_state(const StarAlgebra& algebra, const Vector& x) {
  return {algebra, x * x.adjoint()};
}

Functional Functional::normalized_trace(const StarAlgebra& algebra) {
  const auto n = algebra.ambient_dim();
  return {algebra, linalg::identity(n) / static_cast<double>(n)};
}

Complex Functional::operator()(const Matrix& a) const { return (coeff_ * a).trace(); }

Complex Functional::operator()(const ElementCoords& c) const { return (*this)(algebra_.element(c)); }

Vector Functional::basis_values() const {
  Vector v(algebra_.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = (*this)(algebra_.basis()[static_cast<size_t>(i)]);
  return v;
}

Functional Functional::operator+(const Functional& other) const {
  if (other.coeff_.rows() != coeff_.rows()) fail_precondition("Functional", "sum of functionals on different algebras");
  return {algebra_, coeff_ + other.coeff_};
}

Functional Functional::operator*(Complex s) const { return {algebra_, s * coeff_}; }

// ---------------------------------------------------------------------------
// positivity and variation

Matrix gram(const Functional& phi) {
  const auto& b = phi.algebra().basis();
  const auto d = static_cast<Eigen::Index>(b.size());
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = phi(b[static_cast<size_t>(i)].adjoint() * b[static_cast<size_t>(j)]);
  return g;
}

PositivityReport positivity(const Functional& phi, double tol) {
  const Matrix g = gram(phi);
  const double scale = linalg::op_norm(g);
  PositivityReport r{};
  r.hermitian = linalg::hermiticity_defect(g) <= tol * std::max(scale, 1e-300);
  const auto he = linalg::eigh(g);
  r.min_eigenvalue = he.values.minCoeff();
  r.max_eigenvalue = he.values.maxCoeff();
  r.positive = r.hermitian && r.min_eigenvalue >= -tol * r.max_eigenvalue;
  return r;
}

bool is_positive(const Functional& phi, double tol) { return positivity(phi, tol).positive; }

namespace {

struct GramSplit {
  Matrix range;        // V_k, kept eigenvectors
  RealVector lambdas;  // kept eigenvalues
  Matrix null;         // discarded eigenvectors
};

GramSplit split_gram(const Matrix& g) {
  const auto he = linalg::eigh(g);
  const double lmax = std::max(0.0, he.values.maxCoeff());
  const double cut = 1e-10 * lmax;
  std::vector<Eigen::Index> keep, drop;
  for (Eigen::Index i = 0; i < he.values.size(); ++i) (lmax > 0 && he.values(i) > cut ? keep : drop).push_back(i);
  GramSplit s;
  s.range.resize(g.rows(), static_cast<Eigen::Index>(keep.size()));
  s.lambdas.resize(static_cast<Eigen::Index>(keep.size()));
  s.null.resize(g.rows(), static_cast<Eigen::Index>(drop.size()));
  for (size_t j = 0; j < keep.size(); ++j) {
    s.range.col(static_cast<Eigen::Index>(j)) = he.vectors.col(keep[j]);
    s.lambdas(static_cast<Eigen::Index>(j)) = he.values(keep[j]);
  }
  for (size_t j = 0; j < drop.size(); ++j) s.null.col(static_cast<Eigen::Index>(j)) = he.vectors.col(drop[j]);
  return s;
}

// Rejects functionals that are nonzero on the isotropic subspace: there
// |φ(a)|²/φ(a*a) is unbounded.
void require_finite_variation(const GramSplit& s, const Vector& v, const char* where) {
  if (s.null.cols() == 0) return;
  const double leak = (s.null.transpose() * v).norm();
  if (leak > 1e-8 * std::max(v.norm(), 1e-300)) fail_precondition(where, "functional has unbounded variation");
}

}  // namespace

double variation(const Functional& phi, double tol) {
  constexpr const char* where = "variation";
  if (!is_positive(phi, tol)) fail_precondition(where, "functional is not positive");
  const Vector v = phi.basis_values();
  const auto s = split_gram(gram(phi));
  if (s.lambdas.size() == 0) {
    if (v.norm() > 0) fail_precondition(where, "functional has unbounded variation");
    return 0.0;
  }
  require_finite_variation(s, v, where);
  const Vector w = s.range.transpose() * v;
  double total = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) total += std::norm(w(j)) / s.lambdas(j);
  return total;
}

// ---------------------------------------------------------------------------
// GNS

Matrix GnsResult::represent(const ElementCoords& a) const {
  if (a.values.size() != static_cast<Eigen::Index>(rep.size()))
    fail_precondition("GnsResult::represent", "coordinate length mismatch");
  Matrix m = Matrix::Zero(quotient_dim, quotient_dim);
  for (size_t i = 0; i < rep.size(); ++i) m += a.values(static_cast<Eigen::Index>(i)) * rep[i];
  return m;
}

Vector GnsResult::quotient(const ElementCoords& a) const { return quotient_map * a.values; }

GnsResult gns(const Functional& phi, double tol) {
  constexpr const char* where = "gns";
  if (!is_positive(phi, tol)) fail_precondition(where, "functional is not positive");
  const Vector v = phi.basis_values();
  if (phi.coeff().norm() == 0.0 || v.norm() == 0.0) fail_precondition(where, "zero functional has no GNS representation");

  const auto& alg = phi.algebra();
  const auto& basis = alg.basis();
  GnsResult out;
  out.gram = gram(phi);
  const auto s = split_gram(out.gram);
  out.quotient_dim = s.lambdas.size();
  if (out.quotient_dim == 0) fail_numerical(where, "quotient is zero-dimensional for a nonzero functional");
  require_finite_variation(s, v, where);

  const RealVector root = s.lambdas.cwiseSqrt();
  const RealVector inv_root = root.cwiseInverse();
  out.quotient_map = root.cast<Complex>().asDiagonal() * s.range.adjoint();
  const Matrix lift = s.range * inv_root.cast<Complex>().asDiagonal();

  const auto d = alg.dim();
  out.rep.reserve(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    // Left-multiplication structure constants: column j holds coords(bᵢbⱼ).
    Matrix left(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      left.col(j) = alg.coords(basis[static_cast<size_t>(i)] * basis[static_cast<size_t>(j)]).values;
    out.rep.push_back(out.quotient_map * left * lift);
  }
  out.cyclic_vector = inv_root.cast<Complex>().asDiagonal() * (s.range.adjoint() * v.conjugate());

  const double scale = std::max(1.0, linalg::op_norm(phi.coeff()));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Complex recovered = out.cyclic_vector.dot(out.rep[static_cast<size_t>(i)] * out.cyclic_vector);
    worst = std::max(worst, std::abs(recovered - v(i)));
  }
  if (worst > 1e-6 * scale)
    fail_numerical(where, "φ(a) ≠ ⟨π(a)c, c⟩ (residual " + std::to_string(worst) + ")");
  return out;
}

StateReport classify_state(const Functional& phi, double tol) {
  StateReport r;
  r.is_positive = is_positive(phi, tol);
  if (!r.is_positive) return r;
  r.variation = variation(phi, tol);
  r.is_state = std::abs(r.variation - 1.0) <= 1e-9;
  if (r.variation == 0.0) return r;
  const auto g = gns(phi, tol);
  r.commutant_dim = commutant(g.rep).dim();
  r.is_pure = r.commutant_dim == 1;
  return r;
}

// ---------------------------------------------------------------------------
// cyclic decomposition

namespace {

// Orthonormal basis of the part of span(q) orthogonal to span(w).
Matrix complement_within(const Matrix& q, const Matrix& w) {
  const Matrix rest = q - w * (w.adjoint() * q);
  const auto target = q.cols() - w.cols();
  if (target <= 0) return Matrix(q.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(target);
}

}  // namespace

CyclicDecomposition decompose_cyclic(std::span<const Matrix> rep, std::uint64_t seed, double tol) {
  constexpr const char* where = "decompose_cyclic";
  if (rep.empty()) fail_precondition(where, "empty representation");
  linalg::require_same_dim(rep, where);
  const auto m = rep.front().rows();

  Matrix stacked(static_cast<Eigen::Index>(rep.size()) * m, m);
  for (size_t i = 0; i < rep.size(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * m, m) = rep[i];
  CyclicDecomposition out;
  out.null_space = linalg::nullspace(stacked, 1e-10);
  Matrix remaining = out.null_space.cols() == 0 ? linalg::identity(m) : linalg::nullspace(out.null_space.adjoint(), 1e-10);

  std::vector<Matrix> actions(rep.begin(), rep.end());
  for (const auto& r : rep) actions.push_back(r.adjoint());

  Rng rng(seed);
  while (remaining.cols() > 0) {
    // First standard basis vector with a substantial component in what is left.
    Vector x;
    const double floor = 0.5 / std::sqrt(static_cast<double>(m));
    for (Eigen::Index j = 0; j < m && x.size() == 0; ++j) {
      Vector p = remaining * remaining.row(j).adjoint();
      if (p.norm() > floor) x = p / p.norm();
    }
    if (x.size() == 0) {
      Vector p = remaining * (remaining.adjoint() * random_vector(m, rng));
      x = p / p.norm();
    }

    linalg::SpanBuilder sb(m, tol);
    sb.add(x);
    Eigen::Index done = 0;
    while (done < sb.size()) {
      const Matrix w = sb.basis();
      for (Eigen::Index k = done; k < w.cols(); ++k)
        for (const auto& act : actions) {
          Vector y = act * w.col(k);
          sb.add(remaining * (remaining.adjoint() * y));
        }
      done = w.cols();
    }
    const Matrix piece = sb.basis();
    out.pieces.push_back({piece, x});
    remaining = complement_within(remaining, piece);
  }
  return out;
}

double gn_norm(const ElementCoords& a, const StarAlgebra& algebra) {
  const Matrix el = algebra.element(a);
  const auto he = linalg::eigh(el.adjoint() * el);
  const Vector top = he.vectors.col(he.values.size() - 1);
  return (el * top).norm();
}

EigenStateCheck eigen_state_check(const Matrix& b, const Vector& x, double tol) {
  constexpr const char* where = "eigen_state_check";
  linalg::require_square(b, where);
  if (x.size() != b.rows()) fail_precondition(where, "vector dimension mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-8) fail_precondition(where, "x must be a unit vector");
  const Vector bx = b * x;
  const Complex value = x.dot(bx);
  const double nb = linalg::op_norm(b);
  const double gap = std::abs(bx.squaredNorm() - std::norm(value));
  return {gap <= tol * nb * nb, value};
}

}  // namespace stargebra
