#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerical routines; each oracle takes a different route from the
// implementation it checks (SVD vs Newton, Padé vs spectral, brute force vs
// nullspace, closed forms vs solvers).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix diag(std::initializer_list<Complex> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (auto z : d) v(i++) = z;
  return v.asDiagonal();
}

inline Matrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline double opnorm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

/// ω = exp(2πi/N) and the unnormalised DFT matrix F(k, n) = ω^{kn}.
inline Complex root_of_unity(int n, int k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

inline Matrix dft(int n) {
  Matrix f(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) f(k, j) = root_of_unity(n, (k * j) % n);
  return f;
}

/// Cyclic shift S e_j = e_{j+1 mod N}.
inline Matrix shift(int n) {
  Matrix s = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) s((j + 1) % n, j) = 1.0;
  return s;
}

/// Polar factors from the SVD a = W Σ V*: u = W V*, |a| = V Σ V*.
struct Polar {
  Matrix u, p;
};

inline Polar svd_polar(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& v = svd.matrixV();
  return {svd.matrixU() * v.adjoint(), v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint()};
}

/// exp by Eigen's scaling-and-squaring Padé routine.
inline Matrix expm(const Matrix& a) { return a.exp(); }

/// Brute-force linear algebra on coordinate vectors: the dimension of
/// {x ∈ span(basis) : x b = b x for all b in basis} via row reduction.
inline int center_dimension(const std::vector<Matrix>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index n = basis.front().rows();
  // Equations in the coordinates c of x = Σ c_i b_i: Σ c_i [b_i, b_j] = 0.
  Matrix eq(d * n * n, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
      eq.block(j * n * n, i, n * n, 1) = Eigen::Map<const Vector>(c.data(), n * n);
    }
  Eigen::FullPivLU<Matrix> lu(eq);
  lu.setThreshold(1e-9);
  return static_cast<int>(d - lu.rank());
}

/// Rank of the span of a list of matrices via full-pivot LU.
inline int span_rank(const std::vector<Matrix>& mats) {
  const Eigen::Index n = mats.front().rows();
  Matrix cols(n * n, static_cast<Eigen::Index>(mats.size()));
  for (size_t i = 0; i < mats.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(mats[i].data(), n * n);
  Eigen::FullPivLU<Matrix> lu(cols);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

/// Eigenvalues of an arbitrary square matrix via Eigen's general solver.
inline std::vector<Complex> eig(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  const Vector v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Symmetric Hausdorff distance between finite point sets, by brute force.
inline double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto one_sided = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = 1e300;
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

/// Direct cyclic convolution on ℤ/N.
inline std::vector<Complex> cyclic_convolve(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  const size_t n = a.size();
  std::vector<Complex> out(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[(i + j) % n] += a[i] * b[j];
  return out;
}

/// Cayley table of S₃ on permutations of {0,1,2}, elements indexed in
/// lexicographic order; (g·h)(x) = g(h(x)).
inline std::vector<std::vector<int>> s3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[static_cast<size_t>(x)] = perms[static_cast<size_t>(g)][static_cast<size_t>(perms[static_cast<size_t>(h)][static_cast<size_t>(x)])];
      t[static_cast<size_t>(g)][static_cast<size_t>(h)] = index(c);
    }
  return t;
}

}  // namespace oracle
