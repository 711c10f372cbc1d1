#include "stargebra/random.hpp"

#include <cmath>

namespace stargebra {

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

Matrix random_matrix(Eigen::Index n, Rng& rng) {
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = random_complex(rng);
  return m;
}

Vector random_vector(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = random_complex(rng);
  return v;
}

Vector random_unit_vector(Eigen::Index n, Rng& rng) {
  Vector v = random_vector(n, rng);
  return v / v.norm();
}

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix m = random_matrix(n, rng);
  return (m + m.adjoint()) / 2.0;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix random_normal(const Vector& eigenvalues, Rng& rng) {
  const Matrix u = random_unitary(eigenvalues.size(), rng);
  return u * eigenvalues.asDiagonal() * u.adjoint();
}

Matrix random_density(Eigen::Index n, Rng& rng) {
  const Matrix g = random_matrix(n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

std::vector<Matrix> random_block_generators(std::span<const BlockShape> blocks, Rng& rng) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) {
    if (b.size < 1 || b.multiplicity < 1) fail_precondition("random_block_generators", "block shapes must be positive");
    n += b.size * b.multiplicity;
  }
  if (n == 0) fail_precondition("random_block_generators", "no blocks");
  const Matrix u = random_unitary(n, rng);
  std::vector<Matrix> gens;
  for (int g = 0; g < 2; ++g) {
    Matrix m = Matrix::Zero(n, n);
    Eigen::Index offset = 0;
    for (const auto& b : blocks) {
      const Matrix x = random_matrix(b.size, rng);
      for (int r = 0; r < b.multiplicity; ++r) {
        m.block(offset, offset, b.size, b.size) = x;
        offset += b.size;
      }
    }
    gens.push_back(u * m * u.adjoint());
  }
  return gens;
}

Matrix random_normal_with_multiplicities(std::span<const int> multiplicities, Rng& rng) {
  Eigen::Index n = 0;
  for (int m : multiplicities) {
    if (m < 1) fail_precondition("random_normal_with_multiplicities", "multiplicities must be positive");
    n += m;
  }
  Vector eig(n);
  Eigen::Index k = 0;
  for (int m : multiplicities) {
    // Distinct eigenvalues on well-separated rings keep clusters apart.
    const Complex lambda = std::polar(1.0 + static_cast<double>(k), uniform(rng, 0.0, 6.283185307179586));
    for (int r = 0; r < m; ++r) eig(k + r) = lambda;
    k += m;
  }
  return random_normal(eig, rng);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace stargebra
