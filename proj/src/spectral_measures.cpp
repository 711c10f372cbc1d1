#include "stargebra/spectral_measures.hpp"

#include <algorithm>
#include <cmath>

#include "stargebra/linalg.hpp"

namespace stargebra {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double max_scale(std::span<const Matrix> mats) {
  double s = 1.0;
  for (const auto& m : mats) s = std::max(s, linalg::op_norm(m));
  return s;
}

}  // namespace

std::vector<Eigen::Index> Resolution::ranks() const {
  std::vector<Eigen::Index> r;
  for (const auto& p : projections) r.push_back(static_cast<Eigen::Index>(std::lround(p.trace().real())));
  return r;
}

Matrix Resolution::measure(std::span<const int> omega) const {
  Matrix m = Matrix::Zero(dim(), dim());
  std::vector<bool> seen(size(), false);
  for (int i : omega) {
    if (i < 0 || static_cast<size_t>(i) >= size()) fail_precondition("Resolution::measure", "point index out of range");
    if (seen[static_cast<size_t>(i)]) continue;
    seen[static_cast<size_t>(i)] = true;
    m += projections[static_cast<size_t>(i)];
  }
  return m;
}

double Resolution::defect() const {
  if (projections.empty()) return 0.0;
  double worst = 0.0;
  Matrix total = Matrix::Zero(dim(), dim());
  for (size_t i = 0; i < size(); ++i) {
    const Matrix& p = projections[i];
    worst = std::max({worst, linalg::op_norm(p * p - p), linalg::hermiticity_defect(p)});
    for (size_t j = i + 1; j < size(); ++j) worst = std::max(worst, linalg::op_norm(p * projections[j]));
    total += p;
  }
  return std::max(worst, linalg::op_norm(total - linalg::identity(dim())));
}

Resolution resolve_normal(const Matrix& b, double tol) {
  constexpr const char* where = "resolve_normal";
  linalg::require_square(b, where);
  if (!linalg::is_normal(b, tol)) fail_precondition(where, "input is not normal");
  const double scale = std::max(1.0, linalg::op_norm(b));
  const auto diag = linalg::diagonalize_normal(b);
  std::vector<Complex> eig(diag.eigenvalues.data(), diag.eigenvalues.data() + diag.eigenvalues.size());
  auto clusters = linalg::cluster_points(eig, tol * scale);

  struct Atom {
    Complex point;
    Matrix projection;
  };
  std::vector<Atom> atoms;
  for (const auto& c : clusters) {
    Complex centroid{0.0, 0.0};
    Matrix q(b.rows(), static_cast<Eigen::Index>(c.size()));
    for (size_t j = 0; j < c.size(); ++j) {
      centroid += eig[static_cast<size_t>(c[j])];
      q.col(static_cast<Eigen::Index>(j)) = diag.unitary.col(c[j]);
    }
    atoms.push_back({centroid / static_cast<double>(c.size()), q * q.adjoint()});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    return x.point.real() != y.point.real() ? x.point.real() < y.point.real() : x.point.imag() < y.point.imag();
  });

  Resolution res;
  res.tol = tol;
  for (auto& a : atoms) {
    res.points.push_back(a.point);
    res.projections.push_back(std::move(a.projection));
  }
  const double err = reconstruction_error(b, res);
  if (err > tol * scale) fail_numerical(where, "reconstruction error " + std::to_string(err) + " exceeds tolerance");
  return res;
}

double reconstruction_error(const Matrix& b, const Resolution& p) {
  return linalg::op_norm(b - pi_P(p, [](Complex z) { return z; }));
}

Matrix pi_P(const Resolution& p, const ScalarFn& f) {
  Matrix out = Matrix::Zero(p.dim(), p.dim());
  for (size_t i = 0; i < p.size(); ++i) {
    const Complex v = f(p.points[i]);
    if (!finite(v)) fail_precondition("pi_P", "f is undefined at a support point");
    out += v * p.projections[i];
  }
  return out;
}

double VectorMeasure::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Complex VectorMeasure::integrate(const ScalarFn& f) const {
  Complex s{0.0, 0.0};
  for (size_t i = 0; i < points.size(); ++i) s += f(points[i]) * weights[i];
  return s;
}

VectorMeasure vector_measure(const Resolution& p, const Vector& x) {
  if (x.size() != p.dim()) fail_precondition("vector_measure", "vector dimension mismatch");
  VectorMeasure mu;
  mu.points = p.points;
  for (const auto& proj : p.projections) mu.weights.push_back((proj * x).squaredNorm());
  return mu;
}

Resolution image_resolution(const Resolution& p, const ScalarFn& f) {
  std::vector<Complex> images;
  double biggest = 1.0;
  for (const auto& z : p.points) {
    images.push_back(f(z));
    if (!finite(images.back())) fail_precondition("image_resolution", "f is undefined at a support point");
    biggest = std::max(biggest, std::abs(images.back()));
  }
  Resolution out;
  out.tol = p.tol;
  for (const auto& c : linalg::cluster_points(images, p.tol * biggest)) {
    Matrix sum = Matrix::Zero(p.dim(), p.dim());
    for (int i : c) sum += p.projections[static_cast<size_t>(i)];
    out.points.push_back(images[static_cast<size_t>(c.front())]);
    out.projections.push_back(std::move(sum));
  }
  return out;
}

Resolution resolve_representation(std::span<const Matrix> rep, const CharacterSet& chars, std::uint64_t seed,
                                  double tol) {
  constexpr const char* where = "resolve_representation";
  if (static_cast<Eigen::Index>(rep.size()) != chars.values.cols())
    fail_precondition(where, "representation must give one matrix per algebra basis element");
  linalg::require_same_dim(rep, where);
  const auto m = rep.front().rows();
  const double scale = max_scale(rep);
  for (size_t i = 0; i < rep.size(); ++i)
    for (size_t j = i + 1; j < rep.size(); ++j)
      if (linalg::op_norm(rep[i] * rep[j] - rep[j] * rep[i]) > tol * scale * scale)
        fail_precondition(where, "representation range is not commutative");
  Matrix stacked(static_cast<Eigen::Index>(rep.size()) * m, m);
  for (size_t i = 0; i < rep.size(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * m, m) = rep[i];
  if (linalg::nullspace(stacked, 1e-10).cols() > 0) fail_precondition(where, "representation is degenerate");

  Rng rng(seed);
  std::vector<Matrix> by_character(static_cast<size_t>(chars.size()), Matrix::Zero(m, m));
  std::vector<bool> used(static_cast<size_t>(chars.size()), false);
  for (const auto& q : joint_eigenspaces(rep, rng, tol)) {
    Vector vals(static_cast<Eigen::Index>(rep.size()));
    for (size_t i = 0; i < rep.size(); ++i)
      vals(static_cast<Eigen::Index>(i)) = (q.adjoint() * rep[i] * q).trace() / static_cast<double>(q.cols());
    Eigen::Index match = -1;
    for (Eigen::Index k = 0; k < chars.size() && match < 0; ++k)
      if ((chars.values.row(k).transpose() - vals).cwiseAbs().maxCoeff() <= 1e-7 * scale) match = k;
    if (match < 0) fail_precondition(where, "joint eigenspace matches no character of the algebra");
    by_character[static_cast<size_t>(match)] += q * q.adjoint();
    used[static_cast<size_t>(match)] = true;
  }
  Resolution out;
  out.tol = tol;
  for (size_t k = 0; k < used.size(); ++k) {
    if (!used[k]) continue;
    out.points.emplace_back(static_cast<double>(k), 0.0);
    out.projections.push_back(std::move(by_character[k]));
  }
  return out;
}

AtomCheck atom_eigen_check(const Resolution& p, const Matrix& b, Complex lambda, double tol) {
  constexpr const char* where = "atom_eigen_check";
  linalg::require_square(b, where);
  if (b.rows() != p.dim()) fail_precondition(where, "operator and resolution dimensions differ");
  AtomCheck out;
  out.point = lambda;
  out.eigenspace = Matrix(b.rows(), 0);
  const double scale = std::max(1.0, linalg::op_norm(b));
  size_t hit = p.size();
  for (size_t i = 0; i < p.size(); ++i)
    if (std::abs(p.points[i] - lambda) <= tol * scale) hit = i;
  if (hit == p.size()) return out;  // P({λ}) = 0

  const auto he = linalg::eigh(p.projections[hit]);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < he.values.size(); ++j)
    if (he.values(j) > 0.5) cols.push_back(j);
  out.eigenspace.resize(b.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) out.eigenspace.col(static_cast<Eigen::Index>(j)) = he.vectors.col(cols[j]);
  out.point = p.points[hit];
  out.is_atom = !cols.empty();
  const double residual = linalg::op_norm(b * out.eigenspace - out.point * out.eigenspace);
  if (residual > std::max(10 * tol, 1e-9) * scale)
    fail_numerical(where, "range of P({λ}) is not an eigenspace (residual " + std::to_string(residual) + ")");
  return out;
}

bool fuglede_check(const Matrix& n1, const Matrix& n2, const Matrix& a, double tol) {
  constexpr const char* where = "fuglede_check";
  linalg::require_square(n1, where);
  linalg::require_square(n2, where);
  if (a.rows() != n2.rows() || a.cols() != n1.rows()) fail_precondition(where, "intertwiner has the wrong shape");
  if (!linalg::is_normal(n1, 1e-8) || !linalg::is_normal(n2, 1e-8)) fail_precondition(where, "n1 and n2 must be normal");
  const double scale = linalg::op_norm(a) * std::max(linalg::op_norm(n1), linalg::op_norm(n2));
  if (linalg::op_norm(a * n1 - n2 * a) > tol * scale) fail_precondition(where, "a does not intertwine n1 and n2");
  return linalg::op_norm(a * n1.adjoint() - n2.adjoint() * a) <= 10 * tol * scale;
}

SpectralRepresentation spectral_representation(std::span<const Matrix> rep, const Vector& c,
                                               const CharacterSet& chars, std::uint64_t seed, double tol) {
  constexpr const char* where = "spectral_representation";
  if (rep.empty()) fail_precondition(where, "empty representation");
  linalg::require_same_dim(rep, where);
  const auto m = rep.front().rows();
  if (c.size() != m) fail_precondition(where, "vector dimension mismatch");
  if (std::abs(c.norm() - 1.0) > 1e-8) fail_precondition(where, "c must be a unit vector");

  Matrix orbit(m, static_cast<Eigen::Index>(rep.size()));
  for (size_t i = 0; i < rep.size(); ++i) orbit.col(static_cast<Eigen::Index>(i)) = rep[i] * c;
  const auto rank = linalg::numerical_rank(orbit, tol);
  if (rank != m)
    fail_precondition(where, "c is not cyclic: closure of rep(A)c has dimension " + std::to_string(rank) +
                                 " < " + std::to_string(m));

  SpectralRepresentation out;
  out.resolution = resolve_representation(rep, chars, seed);
  out.mu = vector_measure(out.resolution, c);
  std::vector<size_t> atoms;
  for (size_t i = 0; i < out.mu.weights.size(); ++i)
    if (out.mu.weights[i] > tol) {
      atoms.push_back(i);
      out.support.push_back(static_cast<int>(std::lround(out.resolution.points[i].real())));
    }
  if (static_cast<Eigen::Index>(atoms.size()) != m)
    fail_numerical(where, "support of μ does not match the dimension of a cyclic representation");

  out.isometry.resize(m, m);
  for (size_t r = 0; r < atoms.size(); ++r) {
    const Vector pc = out.resolution.projections[atoms[r]] * c;
    out.isometry.row(static_cast<Eigen::Index>(r)) = (pc / pc.norm()).adjoint();
  }

  const double scale = max_scale(rep);
  for (size_t i = 0; i < rep.size(); ++i) {
    Vector symbol(m);
    for (size_t r = 0; r < atoms.size(); ++r)
      symbol(static_cast<Eigen::Index>(r)) = chars.values(out.support[r], static_cast<Eigen::Index>(i));
    const double residual = linalg::op_norm(out.isometry * rep[i] - symbol.asDiagonal() * out.isometry);
    if (residual > 1e-7 * scale) fail_numerical(where, "V does not intertwine rep and the multiplication operators");
  }
  return out;
}

}  // namespace stargebra
