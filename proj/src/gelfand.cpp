#include "stargebra/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stargebra/linalg.hpp"

namespace stargebra {

namespace {

constexpr int kRefineAttempts = 8;
constexpr double kCharacterMatchTol = 1e-8;

Matrix random_hermitian_combination(std::span<const Matrix> family, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto r = family.front().rows();
  Matrix h = Matrix::Zero(r, r);
  for (const auto& m : family) {
    const double x = g(rng);
    const double y = g(rng);
    h += x * (m + m.adjoint()) / 2.0 + y * (m - m.adjoint()) / (2.0 * kI);
  }
  return (h + h.adjoint()) / 2.0;
}

// Ordering key of a character value: argument in [0, 2π), then modulus. With
// it the characters of ℂ[ℤ/N] come out in DFT order, τ_k(δ₁) = e^{2πik/N}.
std::pair<double, double> order_key(Complex z) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double mod = std::abs(z);
  if (mod <= 1e-12) return {0.0, 0.0};
  double arg = std::arg(z);
  if (arg < 0) arg += kTwoPi;
  if (arg > kTwoPi - 1e-9) arg = 0.0;
  return {arg, mod};
}

bool value_order(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto ka = order_key(a(i)), kb = order_key(b(i));
    if (std::abs(ka.first - kb.first) > 1e-9) return ka.first < kb.first;
    if (std::abs(ka.second - kb.second) > 1e-9) return ka.second < kb.second;
  }
  return false;
}

}  // namespace

std::vector<Matrix> joint_eigenspaces(std::span<const Matrix> family, Rng& rng, double tol) {
  constexpr const char* where = "joint_eigenspaces";
  if (family.empty()) fail_precondition(where, "empty family");
  linalg::require_same_dim(family, where);
  const auto m = family.front().rows();
  std::vector<double> scales;
  for (const auto& f : family) scales.push_back(std::max(1.0, linalg::op_norm(f)));

  std::vector<Matrix> out;
  std::vector<Matrix> pending{linalg::identity(m)};
  while (!pending.empty()) {
    const Matrix q = std::move(pending.back());
    pending.pop_back();
    const auto r = q.cols();
    std::vector<Matrix> restricted;
    bool scalar = true;
    for (size_t i = 0; i < family.size(); ++i) {
      restricted.push_back(q.adjoint() * family[i] * q);
      const Complex mean = restricted.back().trace() / static_cast<double>(r);
      if (linalg::op_norm(restricted.back() - mean * linalg::identity(r)) > tol * scales[i]) scalar = false;
    }
    if (scalar) {
      out.push_back(q);
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < kRefineAttempts && !split; ++attempt) {
      const Matrix h = random_hermitian_combination(restricted, rng);
      const auto he = linalg::eigh(h);
      std::vector<Complex> pts(static_cast<size_t>(he.values.size()));
      for (Eigen::Index i = 0; i < he.values.size(); ++i) pts[static_cast<size_t>(i)] = he.values(i);
      const auto clusters = linalg::cluster_points(pts, tol * std::max(1.0, linalg::op_norm(h)));
      if (clusters.size() < 2) continue;
      split = true;
      for (const auto& c : clusters) {
        Matrix cols(r, static_cast<Eigen::Index>(c.size()));
        for (size_t j = 0; j < c.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = he.vectors.col(c[j]);
        pending.push_back(q * cols);
      }
    }
    if (!split) fail_numerical(where, "block refinement failed after 8 random combinations");
  }
  return out;
}

CharacterSet characters(const StarAlgebra& algebra, std::uint64_t seed) {
  constexpr const char* where = "characters";
  if (!algebra.is_commutative()) fail_precondition(where, "algebra is not commutative");
  Rng rng(seed);
  const auto blocks = joint_eigenspaces(algebra.basis(), rng);
  const auto d = algebra.dim();
  const auto m = algebra.ambient_dim();

  struct Found {
    Vector values;
    std::vector<Matrix> blocks;
  };
  std::vector<Found> found;
  std::vector<Matrix> null_blocks;
  for (const auto& q : blocks) {
    Vector vals(d);
    for (Eigen::Index i = 0; i < d; ++i)
      vals(i) = (q.adjoint() * algebra.basis()[static_cast<size_t>(i)] * q).trace() / static_cast<double>(q.cols());
    if (vals.cwiseAbs().maxCoeff() <= kCharacterMatchTol) {
      null_blocks.push_back(q);
      continue;
    }
    auto same = std::find_if(found.begin(), found.end(), [&](const Found& f) {
      return (f.values - vals).cwiseAbs().maxCoeff() <= kCharacterMatchTol;
    });
    if (same != found.end())
      same->blocks.push_back(q);
    else
      found.push_back({vals, {q}});
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return value_order(a.values, b.values); });

  CharacterSet out{algebra, {}, Matrix(static_cast<Eigen::Index>(found.size()), d), Matrix(m, m), {}};
  Eigen::Index col = 0;
  auto place = [&](const Matrix& q, std::vector<int>* pattern) {
    for (Eigen::Index j = 0; j < q.cols(); ++j, ++col) {
      out.joint_diagonalizer.col(col) = q.col(j);
      if (pattern) pattern->push_back(static_cast<int>(col));
    }
  };
  for (size_t k = 0; k < found.size(); ++k) {
    std::vector<int> pattern;
    Matrix proj = Matrix::Zero(m, m);
    Eigen::Index rank = 0;
    for (const auto& q : found[k].blocks) {
      place(q, &pattern);
      proj += q * q.adjoint();
      rank += q.cols();
    }
    out.characters.emplace_back(algebra, proj / static_cast<double>(rank));
    out.values.row(static_cast<Eigen::Index>(k)) = out.characters.back().basis_values().transpose();
    out.block_pattern.push_back(std::move(pattern));
  }
  for (const auto& q : null_blocks) place(q, nullptr);
  return out;
}

Vector gelfand_transform(const ElementCoords& a, const CharacterSet& chars) {
  if (a.values.size() != chars.values.cols())
    fail_precondition("gelfand_transform", "coordinate length differs from algebra dimension");
  return chars.values * a.values;
}

DiscreteMeasure bochner_measure(const Functional& psi, const CharacterSet& chars) {
  constexpr const char* where = "bochner_measure";
  const auto d = chars.algebra.dim();
  if (psi.algebra().dim() != d || psi.algebra().ambient_dim() != chars.algebra.ambient_dim())
    fail_precondition(where, "functional and characters live on different algebras");
  if (!chars.algebra.is_commutative()) fail_precondition(where, "algebra is not commutative");
  if (!is_positive(psi)) fail_precondition(where, "functional is not positive");
  if (std::abs(variation(psi) - 1.0) > 1e-9) fail_precondition(where, "functional is not normalized (variation != 1)");
  if (chars.size() != d) fail_numerical(where, "character count differs from algebra dimension");

  const Vector target = psi.basis_values();
  const Matrix system = chars.values.transpose();
  const Vector mu = system.fullPivLu().solve(target);
  const double residual = (system * mu - target).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * std::max(1.0, target.cwiseAbs().maxCoeff()))
    fail_numerical(where, "measure does not reproduce the functional (residual " + std::to_string(residual) + ")");

  DiscreteMeasure out;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (std::abs(mu(k).imag()) > 1e-9) fail_numerical(where, "complex weight");
    if (mu(k).real() < -1e-9) fail_numerical(where, "negative weight");
    if (std::abs(mu(k)) <= 1e-12) continue;
    out.support.push_back(static_cast<int>(k));
    out.weights.push_back(mu(k).real());
  }
  return out;
}

DiscreteMeasure bochner_measure(const Functional& psi, std::uint64_t seed) {
  return bochner_measure(psi, characters(psi.algebra(), seed));
}

std::vector<Complex> cyclic_fourier(std::span<const Complex> coeffs) {
  const auto n = coeffs.size();
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j)
      out[k] += coeffs[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n));
  return out;
}

GroupCoeffs wiener_inverse_demo(std::span<const Complex> coeffs, double tol) {
  constexpr const char* where = "wiener_inverse_demo";
  const auto n = coeffs.size();
  if (n == 0) fail_precondition(where, "empty coefficient vector");
  const auto hat = cyclic_fourier(coeffs);
  const double floor = tol * std::max(1.0, ell1_norm(coeffs));
  for (const auto& h : hat)
    if (std::abs(h) <= floor) fail_precondition(where, "Gelfand transform vanishes at some character: not invertible");

  GroupCoeffs inv(n, Complex{0.0, 0.0});
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < n; ++k)
      inv[j] += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n)) / hat[k];
    inv[j] /= static_cast<double>(n);
  }
  return inv;
}

}  // namespace stargebra
