#include "stargebra/algebra_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stargebra/linalg.hpp"

namespace stargebra {

namespace {

constexpr const char* kBuild = "build_algebra";

std::vector<Matrix> matrices_of(const linalg::SpanBuilder& sb, Eigen::Index n) {
  const Matrix q = sb.basis();
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(q.cols()));
  for (Eigen::Index j = 0; j < q.cols(); ++j) out.push_back(linalg::unvec(q.col(j), n));
  return out;
}

}  // namespace

StarAlgebra::StarAlgebra(Eigen::Index n, std::vector<Matrix> basis, double tol)
    : ambient_dim_(n), basis_(std::move(basis)), tol_(tol), unital_(false) {
  unital_ = distance(linalg::identity(n)) <= tol_ * std::sqrt(static_cast<double>(n));
}

StarAlgebra StarAlgebra::from_spanning_set(Eigen::Index ambient_dim, std::span<const Matrix> spanning,
                                           double tol) {
  constexpr const char* where = "StarAlgebra";
  if (ambient_dim < 1) fail_precondition(where, "ambient dimension must be >= 1");
  if (!(tol > 0)) fail_precondition(where, "tol must be positive");
  linalg::require_same_dim(spanning, where);
  linalg::SpanBuilder sb(ambient_dim * ambient_dim, tol);
  for (const auto& m : spanning) {
    if (m.rows() != ambient_dim) fail_precondition(where, "matrix does not match ambient dimension");
    const double nm = m.norm();
    if (nm > 0) sb.add(linalg::vec(m) / nm);
  }
  StarAlgebra alg(ambient_dim, matrices_of(sb, ambient_dim), tol);
  const double residual = alg.closure_residual();
  if (residual > 10 * tol)
    fail_precondition(where, "span is not closed under products and adjoints (residual " +
                                 std::to_string(residual) + ")");
  return alg;
}

ElementCoords StarAlgebra::coords(const Matrix& a) const {
  Vector c(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) c(i) = linalg::hs_inner(a, basis_[static_cast<size_t>(i)]);
  return {c};
}

Matrix StarAlgebra::element(const ElementCoords& c) const {
  if (c.values.size() != dim()) fail_precondition("StarAlgebra::element", "coordinate length mismatch");
  Matrix a = Matrix::Zero(ambient_dim_, ambient_dim_);
  for (Eigen::Index i = 0; i < dim(); ++i) a += c.values(i) * basis_[static_cast<size_t>(i)];
  return a;
}

Matrix StarAlgebra::project(const Matrix& a) const { return element(coords(a)); }

double StarAlgebra::distance(const Matrix& a) const { return (a - project(a)).norm(); }

bool StarAlgebra::contains(const Matrix& a) const {
  return distance(a) <= 10 * tol_ * std::max(1.0, a.norm());
}

ElementCoords StarAlgebra::identity_coords() const {
  if (!unital_) fail_precondition("StarAlgebra::identity_coords", "algebra is not unital");
  return coords(linalg::identity(ambient_dim_));
}

double StarAlgebra::closure_residual() const {
  double worst = 0.0;
  for (const auto& bi : basis_) {
    worst = std::max(worst, distance(bi.adjoint()));
    for (const auto& bj : basis_) worst = std::max(worst, distance(bi * bj));
  }
  return worst;
}

bool StarAlgebra::is_commutative() const {
  for (size_t i = 0; i < basis_.size(); ++i)
    for (size_t j = i + 1; j < basis_.size(); ++j)
      if ((basis_[i] * basis_[j] - basis_[j] * basis_[i]).norm() > 10 * tol_) return false;
  return true;
}

Matrix StarAlgebra::basis_columns() const {
  Matrix q(ambient_dim_ * ambient_dim_, dim());
  for (Eigen::Index j = 0; j < dim(); ++j) q.col(j) = linalg::vec(basis_[static_cast<size_t>(j)]);
  return q;
}

double default_closure_tol(std::span<const Matrix> generators) {
  double biggest = 1.0;
  for (const auto& g : generators)
    if (g.size() > 0) biggest = std::max(biggest, g.cwiseAbs().maxCoeff());
  return 1e-10 * biggest;
}

StarAlgebra build_algebra(Eigen::Index n, std::span<const Matrix> generators, std::optional<double> tol) {
  if (n < 1) fail_precondition(kBuild, "ambient dimension must be >= 1");
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n) fail_precondition(kBuild, "dimension mismatch among generators");
  linalg::require_same_dim(generators, kBuild);
  const double t = tol.value_or(default_closure_tol(generators));
  if (!(t > 0)) fail_precondition(kBuild, "tol must be positive");

  linalg::SpanBuilder sb(n * n, t);
  sb.add(linalg::vec(linalg::identity(n)) / std::sqrt(static_cast<double>(n)));
  for (const auto& g : generators) {
    const double ng = g.norm();
    if (ng == 0) continue;
    sb.add(linalg::vec(g) / ng);
    sb.add(linalg::vec(g.adjoint()) / ng);
  }

  // Products only need revisiting for pairs that involve a direction added in
  // the previous pass.
  Eigen::Index done = 0;
  while (done < sb.size()) {
    const auto current = matrices_of(sb, n);
    const auto size = static_cast<Eigen::Index>(current.size());
    for (Eigen::Index i = done; i < size; ++i) sb.add(linalg::vec(current[static_cast<size_t>(i)].adjoint()));
    for (Eigen::Index i = 0; i < size; ++i)
      for (Eigen::Index j = 0; j < size; ++j) {
        if (i < done && j < done) continue;
        sb.add(linalg::vec(current[static_cast<size_t>(i)] * current[static_cast<size_t>(j)]));
      }
    done = size;
  }
  return StarAlgebra::from_spanning_set(n, matrices_of(sb, n), t);
}

StarAlgebra unitize(const StarAlgebra& a) {
  if (a.unital()) return a;
  std::vector<Matrix> spanning = a.basis();
  spanning.push_back(linalg::identity(a.ambient_dim()));
  return StarAlgebra::from_spanning_set(a.ambient_dim(), spanning, a.tol());
}

HermitianParts hermitian_parts(const Matrix& a) {
  linalg::require_square(a, "hermitian_parts");
  return {(a + a.adjoint()) / 2.0, (a - a.adjoint()) / (2.0 * kI)};
}

// ---------------------------------------------------------------------------
// groups

FiniteGroup FiniteGroup::cyclic(int order) {
  if (order < 1) throw Error(ErrorKind::Parse, "group", "cyclic order must be >= 1");
  std::vector<std::vector<int>> table(static_cast<size_t>(order), std::vector<int>(static_cast<size_t>(order)));
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) table[static_cast<size_t>(g)][static_cast<size_t>(h)] = (g + h) % order;
  return from_table(std::move(table));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::Parse, "group", what); };
  const int n = static_cast<int>(table.size());
  if (n < 1) bad("Cayley table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) bad("Cayley table is not square");
    for (int x : row)
      if (x < 0 || x >= n) bad("Cayley table entry out of range");
  }
  FiniteGroup grp;
  grp.table_ = std::move(table);
  const auto& t = grp.table_;
  auto at = [&](int g, int h) { return t[static_cast<size_t>(g)][static_cast<size_t>(h)]; };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) bad("Cayley table is not associative");

  int e = -1;
  for (int g = 0; g < n && e < 0; ++g) {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h) ok = at(g, h) == h && at(h, g) == h;
    if (ok) e = g;
  }
  if (e < 0) bad("Cayley table has no identity element");
  grp.identity_ = e;

  grp.inverse_.assign(static_cast<size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (at(g, h) == e && at(h, g) == e) {
        grp.inverse_[static_cast<size_t>(g)] = h;
        break;
      }
    if (grp.inverse_[static_cast<size_t>(g)] < 0) bad("element " + std::to_string(g) + " has no inverse");
  }
  return grp;
}

Matrix GroupRing::element(std::span<const Complex> coeffs) const {
  if (static_cast<int>(coeffs.size()) != group.order())
    fail_precondition("GroupRing::element", "coefficient vector length differs from group order");
  const auto n = static_cast<Eigen::Index>(group.order());
  Matrix a = Matrix::Zero(n, n);
  for (size_t g = 0; g < coeffs.size(); ++g) a += coeffs[g] * embedding[g];
  return a;
}

GroupRing group_ring(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<Matrix> embedding;
  embedding.reserve(static_cast<size_t>(n));
  for (int g = 0; g < n; ++g) {
    // δ_g e_h = e_{gh}
    Matrix m = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) m(group.mul(g, h), h) = 1.0;
    embedding.push_back(std::move(m));
  }
  auto algebra = StarAlgebra::from_spanning_set(n, embedding, 1e-10);
  return {group, std::move(algebra), std::move(embedding)};
}

GroupCoeffs convolve(const FiniteGroup& group, std::span<const Complex> a, std::span<const Complex> b) {
  const auto n = static_cast<size_t>(group.order());
  if (a.size() != n || b.size() != n) fail_precondition("convolve", "coefficient length differs from group order");
  GroupCoeffs out(n, Complex{0.0, 0.0});
  for (size_t g = 0; g < n; ++g)
    for (size_t h = 0; h < n; ++h)
      out[static_cast<size_t>(group.mul(static_cast<int>(g), static_cast<int>(h)))] += a[g] * b[h];
  return out;
}

GroupCoeffs involution(const FiniteGroup& group, std::span<const Complex> a) {
  const auto n = static_cast<size_t>(group.order());
  if (a.size() != n) fail_precondition("involution", "coefficient length differs from group order");
  GroupCoeffs out(n);
  for (size_t g = 0; g < n; ++g) out[g] = std::conj(a[static_cast<size_t>(group.inverse(static_cast<int>(g)))]);
  return out;
}

double ell1_norm(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& z : a) s += std::abs(z);
  return s;
}

double counterexample_ratio(double gamma, int n) {
  if (!(gamma > 1.0)) fail_precondition("counterexample_ratio", "gamma must exceed 1");
  if (n < 0) fail_precondition("counterexample_ratio", "n must be nonnegative");
  // |δ₋ₙ| = γ⁻ⁿ while |τ(δ₋ₙ)| = |τ(δ₁)|⁻ⁿ = 1 on the unit circle.
  const double weighted_norm = std::pow(gamma, -n);
  const double character_value = 1.0;
  return character_value / weighted_norm;
}

}  // namespace stargebra
