#include "stargebra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace stargebra::linalg {

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

RealVector singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

void require_finite(const Matrix& a, const std::string& where) {
  if (!a.allFinite()) fail_precondition(where, "matrix has non-finite entries");
}

void require_square(const Matrix& a, const std::string& where) {
  if (a.rows() != a.cols() || a.rows() == 0)
    fail_precondition(where, "matrix must be square with dimension >= 1");
  require_finite(a, where);
}

void require_same_dim(std::span<const Matrix> mats, const std::string& where) {
  if (mats.empty()) return;
  const auto n = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) fail_precondition(where, "dimension mismatch among matrices");
    require_finite(m, where);
  }
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

double hermiticity_defect(const Matrix& a) { return op_norm(a - a.adjoint()); }

double normality_defect(const Matrix& b) {
  return op_norm(b.adjoint() * b - b * b.adjoint());
}

double unitarity_defect(const Matrix& u) {
  return op_norm(u.adjoint() * u - identity(u.cols()));
}

bool is_hermitian(const Matrix& a, double tol) {
  return hermiticity_defect(a) <= tol * op_norm(a);
}

bool is_normal(const Matrix& b, double tol) {
  const double nb = op_norm(b);
  return normality_defect(b) <= tol * std::max(nb * nb, 1.0);
}

bool is_unitary(const Matrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

Complex hs_inner(const Matrix& x, const Matrix& y) {
  return (y.conjugate().array() * x.array()).sum();
}

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Eigen::Index n) {
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

HermitianEigen eigh(const Matrix& a) {
  const Matrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) fail_numerical("eigh", "Hermitian eigen-solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

UnitaryDiagonalization diagonalize_normal(const Matrix& b) {
  const double scale = op_norm(b);
  if (hermiticity_defect(b) <= 64 * std::numeric_limits<double>::epsilon() * scale) {
    auto he = eigh(b);
    return {he.values.cast<Complex>(), std::move(he.vectors)};
  }
  Eigen::ComplexSchur<Matrix> schur(b);
  if (schur.info() != Eigen::Success) fail_numerical("diagonalize_normal", "Schur decomposition failed");
  return {schur.matrixT().diagonal(), schur.matrixU()};
}

Vector eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) fail_numerical("eigenvalues", "eigen-solver failed");
  return es.eigenvalues();
}

Matrix nullspace(const Matrix& m, double rel_tol, double scale) {
  const auto n = m.cols();
  if (m.rows() == 0) return identity(n);
  // Tall input is first reduced to its n×n triangular factor, which has the
  // same singular values and right singular vectors.
  Matrix square;
  if (m.rows() > n) {
    Eigen::HouseholderQR<Matrix> qr(m);
    square = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    square = m;
  }
  Eigen::JacobiSVD<Matrix> svd(square, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double ref = scale >= 0 ? scale : (s.size() > 0 ? s(0) : 0.0);
  const double cut = rel_tol * ref;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Eigen::Index numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const RealVector s = singular_values(m);
  const double cut = rel_tol * s(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return rank;
}

namespace {

// sin of the largest angle from span(q2) to span(q1).
double sin_gap(const Matrix& q1, const Matrix& q2) {
  if (q2.cols() == 0) return 0.0;
  const Matrix residual = q2 - q1 * (q1.adjoint() * q2);
  return std::min(1.0, op_norm(residual));
}

}  // namespace

double max_principal_angle(const Matrix& q1, const Matrix& q2) {
  if (q1.cols() != q2.cols()) return std::numbers::pi / 2;
  return std::asin(std::max(sin_gap(q1, q2), sin_gap(q2, q1)));
}

SpanBuilder::SpanBuilder(Eigen::Index ambient, double threshold)
    : ambient_(ambient), threshold_(threshold) {}

Vector SpanBuilder::residual(const Vector& v) const {
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : cols_) r -= q.dot(r) * q;
  return r;
}

bool SpanBuilder::add(const Vector& v) {
  if (size() >= ambient_) return false;
  Vector r = residual(v);
  const double nr = r.norm();
  if (!(nr > threshold_)) return false;
  cols_.push_back(r / nr);
  return true;
}

Matrix SpanBuilder::basis() const {
  Matrix q(ambient_, size());
  for (Eigen::Index j = 0; j < size(); ++j) q.col(j) = cols_[static_cast<size_t>(j)];
  return q;
}

std::vector<std::vector<int>> cluster_points(std::span<const Complex> points, double threshold) {
  const size_t n = points.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(points[i] - points[j]) <= threshold) {
        const size_t ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<int>> clusters;
  std::vector<int> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<size_t>(slot[r])].push_back(static_cast<int>(i));
  }
  return clusters;
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  struct Pair {
    double d;
    size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) pairs.push_back({std::abs(a[i] - b[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
  std::vector<bool> used_a(a.size()), used_b(b.size());
  double worst = 0.0;
  size_t matched = 0;
  for (const auto& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = used_b[p.j] = true;
    worst = std::max(worst, p.d);
    if (++matched == a.size()) break;
  }
  return worst;
}

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return (a.empty() && b.empty()) ? 0.0 : std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Complex> x, std::span<const Complex> y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace stargebra::linalg
