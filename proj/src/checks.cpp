#include "stargebra/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>

#include "stargebra/algebra_core.hpp"
#include "stargebra/commutant.hpp"
#include "stargebra/evolution.hpp"
#include "stargebra/gelfand.hpp"
#include "stargebra/linalg.hpp"
#include "stargebra/random.hpp"
#include "stargebra/spectral_calculus.hpp"
#include "stargebra/spectral_measures.hpp"
#include "stargebra/states_gns.hpp"

namespace stargebra::checks {

namespace {

using linalg::op_norm;

/// One case returns a residual already normalised to be compared with tol.
using CaseFn = std::function<double(Rng&)>;

struct Property {
  const char* module;
  const char* name;
  int cases;
  double tol;
  CaseFn run;
};

double flag(bool failed) { return failed ? 1.0 : 0.0; }

double min_eig(const Matrix& h) { return linalg::eigh(h).values.minCoeff(); }

std::vector<Complex> to_list(const Vector& v) { return {v.data(), v.data() + v.size()}; }

/// A random unital *-algebra of ambient dimension ≤ 6 with one to three
/// simple summands, some repeated.
StarAlgebra random_algebra(Rng& rng) {
  std::vector<BlockShape> blocks;
  int n = 0;
  const int count = uniform_int(rng, 1, 3);
  for (int i = 0; i < count; ++i) {
    BlockShape b{uniform_int(rng, 1, 2), uniform_int(rng, 1, 2)};
    if (n + b.size * b.multiplicity > 6) break;
    n += b.size * b.multiplicity;
    blocks.push_back(b);
  }
  const auto gens = random_block_generators(blocks, rng);
  return build_algebra(n, gens);
}

StarAlgebra random_commutative_algebra(Rng& rng) {
  std::vector<int> mult;
  int n = 0;
  const int distinct = uniform_int(rng, 1, 4);
  for (int i = 0; i < distinct; ++i) {
    mult.push_back(uniform_int(rng, 1, 2));
    n += mult.back();
  }
  const Matrix b = random_normal_with_multiplicities(mult, rng);
  return build_algebra(n, std::span<const Matrix>(&b, 1));
}

Functional random_state(const StarAlgebra& a, Rng& rng) {
  return Functional::from_density(a, random_density(a.ambient_dim(), rng));
}

Matrix random_element(const StarAlgebra& a, Rng& rng) {
  return a.element({random_vector(a.dim(), rng)});
}

/// Normal matrix with clustered spectrum and its multiplicities.
struct NormalCase {
  Matrix b;
  std::vector<int> multiplicities;
};

NormalCase random_normal_case(Rng& rng) {
  std::vector<int> mult;
  const int distinct = uniform_int(rng, 1, 4);
  for (int i = 0; i < distinct; ++i) mult.push_back(uniform_int(rng, 1, 2));
  return {random_normal_with_multiplicities(mult, rng), mult};
}

std::vector<int> random_subset(int size, Rng& rng) {
  std::vector<int> out;
  for (int i = 0; i < size; ++i)
    if (uniform_int(rng, 0, 1) == 1) out.push_back(i);
  return out;
}

double subspace_excess(const Subspace& inner, const Subspace& outer) {
  double worst = 0.0;
  for (const auto& x : inner.basis()) worst = std::max(worst, (x - outer.project(x)).norm());
  return worst;
}

std::vector<Property> algebra_core_properties() {
  return {
      {"algebra-core", "closure", 20, 1e-9, [](Rng& rng) { return random_algebra(rng).closure_residual(); }},
      {"algebra-core", "build_idempotent", 20, 1e-10,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto b = build_algebra(a.ambient_dim(), a.basis());
         return max_principal_angle(Subspace::of(a), Subspace::of(b));
       }},
      {"algebra-core", "group_ring_relations", 10, 0.0,
       [](Rng& rng) {
         const auto g = FiniteGroup::cyclic(uniform_int(rng, 1, 8));
         const auto ring = group_ring(g);
         double worst = 0.0;
         for (int x = 0; x < g.order(); ++x) {
           const auto& dx = ring.embedding[static_cast<size_t>(x)];
           worst = std::max(worst, (dx.adjoint() - ring.embedding[static_cast<size_t>(g.inverse(x))]).norm());
           for (int y = 0; y < g.order(); ++y)
             worst = std::max(worst, (dx * ring.embedding[static_cast<size_t>(y)] -
                                      ring.embedding[static_cast<size_t>(g.mul(x, y))])
                                         .norm());
         }
         return worst;
       }},
      {"algebra-core", "ell1_submultiplicative", 50, 1e-12,
       [](Rng& rng) {
         const auto g = FiniteGroup::cyclic(uniform_int(rng, 1, 8));
         const Vector a = random_vector(g.order(), rng), b = random_vector(g.order(), rng);
         const auto la = to_list(a), lb = to_list(b);
         const double bound = ell1_norm(la) * ell1_norm(lb);
         return std::max(0.0, ell1_norm(convolve(g, la, lb)) - bound) / bound;
       }},
  };
}

std::vector<Property> spectral_calculus_properties() {
  return {
      {"spectral-calculus", "cstar_identity", 50, 1e-9,
       [](Rng& rng) {
         const Matrix a = random_matrix(uniform_int(rng, 2, 8), rng);
         const double na = op_norm(a);
         return std::abs(op_norm(a.adjoint() * a) - na * na) / (na * na);
       }},
      {"spectral-calculus", "sp_ab_equals_sp_ba", 50, 1e-8,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 6);
         const Matrix a = random_matrix(n, rng), b = random_matrix(n, rng);
         const auto s1 = spectrum(a * b).eigenvalues, s2 = spectrum(b * a).eigenvalues;
         return linalg::hausdorff_distance(s1, s2);
       }},
      {"spectral-calculus", "adjoint_spectrum_conjugate", 50, 1e-9,
       [](Rng& rng) {
         const Matrix a = random_matrix(uniform_int(rng, 2, 6), rng);
         auto s = spectrum(a).eigenvalues;
         for (auto& z : s) z = std::conj(z);
         return linalg::multiset_distance(spectrum(a.adjoint()).eigenvalues, s) / (1.0 + op_norm(a));
       }},
      {"spectral-calculus", "ptak_identities", 50, 1e-10,
       [](Rng& rng) {
         const Matrix a = random_matrix(uniform_int(rng, 2, 6), rng);
         const double r = ptak(a), scale = std::max(1.0, r * r);
         return std::max(std::abs(ptak(a.adjoint()) - r), std::abs(ptak(a.adjoint() * a) - r * r)) / scale;
       }},
      {"spectral-calculus", "monotone_inverse", 50, 1e-8,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 6);
         const Matrix g = random_matrix(n, rng), h = random_matrix(n, rng);
         const Matrix a = g * g.adjoint() + 0.1 * linalg::identity(n);
         const Matrix b = a + h * h.adjoint();
         const Matrix d = a.inverse() - b.inverse();
         return std::max(0.0, -min_eig(d));
       }},
      {"spectral-calculus", "hermitian_real_spectrum", 50, 1e-10,
       [](Rng& rng) {
         const Matrix a = random_hermitian(uniform_int(rng, 2, 8), rng);
         return linalg::eigenvalues(a).imag().cwiseAbs().maxCoeff() / op_norm(a);
       }},
      {"spectral-calculus", "commuting_sum_spectrum", 50, 1e-9,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 6);
         const Matrix u = random_unitary(n, rng);
         const Vector da = random_vector(n, rng), db = random_vector(n, rng);
         const Matrix a = u * da.asDiagonal() * u.adjoint(), b = u * db.asDiagonal() * u.adjoint();
         const auto sa = spectrum(a).eigenvalues, sb = spectrum(b).eigenvalues;
         double worst = 0.0;
         for (const auto& z : spectrum(a + b).eigenvalues) {
           double best = std::numeric_limits<double>::infinity();
           for (const auto& x : sa)
             for (const auto& y : sb) best = std::min(best, std::abs(z - x - y));
           worst = std::max(worst, best);
         }
         return worst / (1.0 + op_norm(a) + op_norm(b));
       }},
      {"spectral-calculus", "rational_spectral_mapping", 50, 1e-6,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 5);
         const Matrix a = random_matrix(n, rng);
         const auto sp = spectrum(a).eigenvalues;
         std::vector<Complex> zeros, poles;
         for (int i = uniform_int(rng, 0, 2); i > 0; --i) zeros.push_back(2.0 * random_complex(rng));
         while (poles.size() < 1 + static_cast<size_t>(uniform_int(rng, 0, 1))) {
           const Complex p = 2.0 * random_complex(rng);
           if (linalg::hausdorff_distance(std::span<const Complex>(&p, 1), sp) >= 0.1 &&
               std::all_of(zeros.begin(), zeros.end(), [&](Complex z) { return std::abs(z - p) > 0.1; }))
             poles.push_back(p);
         }
         auto expand = [](const std::vector<Complex>& roots) {
           std::vector<Complex> c{1.0};
           for (const auto& r : roots) {
             std::vector<Complex> next(c.size() + 1, 0.0);
             for (size_t k = 0; k < c.size(); ++k) {
               next[k] += r * c[k];
               next[k + 1] -= c[k];
             }
             c = next;
           }
           return c;
         };
         const RationalFn r(expand(zeros), expand(poles));
         std::vector<Complex> mapped;
         double scale = 1.0;
         for (const auto& z : sp) {
           mapped.push_back(r(z));
           scale = std::max(scale, std::abs(mapped.back()));
         }
         return linalg::hausdorff_distance(spectrum(rational_apply(a, r)).eigenvalues, mapped) / scale;
       }},
      {"spectral-calculus", "sqrt_series_vs_eigen", 50, 1e-8,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 6);
         Matrix a = random_hermitian(n, rng);
         a *= uniform(rng, 0.05, 0.9) / spectral_radius(a);
         const Matrix oracle = positive_sqrt(linalg::identity(n) + a) - linalg::identity(n);
         return (sqrt_series(a) - oracle).norm();
       }},
      {"spectral-calculus", "shirali_ford", 50, 1e-10,
       [](Rng& rng) {
         const Matrix a = random_matrix(uniform_int(rng, 2, 8), rng);
         const double na = op_norm(a);
         return std::max(0.0, -min_eig(a.adjoint() * a)) / (na * na);
       }},
      {"spectral-calculus", "polar_reconstruction", 50, 1e-8,
       [](Rng& rng) {
         const Matrix a = random_matrix(uniform_int(rng, 2, 6), rng);
         const auto pf = polar_factorize(a);
         return (a - pf.unitary * pf.positive).norm() / op_norm(a);
       }},
      {"spectral-calculus", "polar_unitary", 50, 1e-10,
       [](Rng& rng) { return linalg::unitarity_defect(polar_factorize(random_matrix(uniform_int(rng, 2, 6), rng)).unitary); }},
      {"spectral-calculus", "orthogonal_parts", 50, 1e-9,
       [](Rng& rng) {
         const Matrix a = random_hermitian(uniform_int(rng, 2, 6), rng);
         const auto parts = orth_decompose(a);
         const double na = op_norm(a);
         return op_norm(parts.plus * parts.minus) / (na * na);
       }},
  };
}

std::vector<Property> gelfand_properties() {
  return {
      {"gelfand", "character_count", 20, 0.0,
       [](Rng& rng) {
         const auto a = random_commutative_algebra(rng);
         return std::abs(static_cast<double>(characters(a, rng()).size() - a.dim()));
       }},
      {"gelfand", "characters_hermitian", 20, 1e-10,
       [](Rng& rng) {
         const auto a = random_commutative_algebra(rng);
         const auto chars = characters(a, rng());
         double worst = 0.0;
         for (const auto& tau : chars.characters)
           for (const auto& b : a.basis()) worst = std::max(worst, std::abs(tau(Matrix(b.adjoint())) - std::conj(tau(b))));
         return worst;
       }},
      {"gelfand", "transform_isometric", 20, 1e-9,
       [](Rng& rng) {
         const auto a = random_commutative_algebra(rng);
         const auto chars = characters(a, rng());
         const Matrix x = random_element(a, rng);
         const double nx = op_norm(x);
         return std::abs(gelfand_transform(a.coords(x), chars).cwiseAbs().maxCoeff() - nx) / nx;
       }},
      {"gelfand", "bochner_affine", 20, 1e-10,
       [](Rng& rng) {
         const auto a = random_commutative_algebra(rng);
         const auto chars = characters(a, rng());
         const auto p1 = random_state(a, rng), p2 = random_state(a, rng);
         const double t = uniform(rng, 0.0, 1.0);
         auto dense = [&](const DiscreteMeasure& m) {
           RealVector w = RealVector::Zero(chars.size());
           for (size_t i = 0; i < m.support.size(); ++i) w(m.support[i]) = m.weights[i];
           return w;
         };
         const RealVector mix = dense(bochner_measure(p1 * t + p2 * (1.0 - t), chars));
         const RealVector expect = t * dense(bochner_measure(p1, chars)) + (1.0 - t) * dense(bochner_measure(p2, chars));
         return (mix - expect).cwiseAbs().maxCoeff();
       }},
  };
}

std::vector<Property> states_gns_properties() {
  return {
      {"states-gns", "coefficient_recovery", 30, 1e-8,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto phi = random_state(a, rng);
         const auto g = gns(phi);
         double worst = 0.0;
         for (Eigen::Index i = 0; i < a.dim(); ++i) {
           const Complex rec = g.cyclic_vector.dot(g.rep[static_cast<size_t>(i)] * g.cyclic_vector);
           worst = std::max(worst, std::abs(phi(a.basis()[static_cast<size_t>(i)]) - rec));
         }
         return worst / op_norm(phi.coeff());
       }},
      {"states-gns", "variation_is_cyclic_norm", 30, 1e-8,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto phi = random_state(a, rng) * uniform(rng, 0.5, 2.0);
         return std::abs(variation(phi) - gns(phi).cyclic_vector.squaredNorm());
       }},
      {"states-gns", "variation_additive", 30, 1e-8,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto p1 = random_state(a, rng), p2 = random_state(a, rng) * uniform(rng, 0.1, 3.0);
         return std::abs(variation(p1 + p2) - variation(p1) - variation(p2));
       }},
      {"states-gns", "representation_star_preserving", 30, 1e-9,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         // Rank-deficient densities exercise the isotropic quotient.
         const Vector x = random_unit_vector(a.ambient_dim(), rng);
         const auto g = gns(Functional::vector_state(a, x));
         double worst = 0.0;
         for (Eigen::Index i = 0; i < a.dim(); ++i) {
           const Matrix& b = a.basis()[static_cast<size_t>(i)];
           worst = std::max(worst, (g.represent(a.coords(b.adjoint())) - g.rep[static_cast<size_t>(i)].adjoint()).norm());
         }
         return worst;
       }},
      {"states-gns", "purity_cross_validation", 10, 0.0,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 4);
         const auto full = build_algebra(n, std::vector<Matrix>{random_matrix(n, rng), random_matrix(n, rng)});
         const auto pure = classify_state(Functional::vector_state(full, random_unit_vector(n, rng)));
         const auto mixed = classify_state(Functional::normalized_trace(full));
         return flag(!pure.is_pure || pure.commutant_dim != 1 || mixed.is_pure ||
                     mixed.commutant_dim != static_cast<Eigen::Index>(n * n));
       }},
      {"states-gns", "cyclic_decomposition", 20, 1e-9,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto dec = decompose_cyclic(a.basis(), rng());
         double worst = 0.0;
         Eigen::Index total = dec.null_space.cols();
         for (size_t i = 0; i < dec.pieces.size(); ++i) {
           const Matrix& q = dec.pieces[i].basis;
           total += q.cols();
           for (size_t j = i + 1; j < dec.pieces.size(); ++j)
             worst = std::max(worst, op_norm(q.adjoint() * dec.pieces[j].basis));
           for (const auto& b : a.basis()) worst = std::max(worst, op_norm(b * q - q * (q.adjoint() * b * q)));
         }
         return total == a.ambient_dim() ? worst : 1.0;
       }},
  };
}

std::vector<Property> spectral_measure_properties() {
  return {
      {"spectral-measures", "reconstruction", 50, 1e-8,
       [](Rng& rng) {
         const auto c = random_normal_case(rng);
         return reconstruction_error(c.b, resolve_normal(c.b)) / op_norm(c.b);
       }},
      {"spectral-measures", "measure_multiplicative", 50, 1e-10,
       [](Rng& rng) {
         const auto c = random_normal_case(rng);
         const auto p = resolve_normal(c.b);
         const int m = static_cast<int>(p.size());
         const auto w1 = random_subset(m, rng), w2 = random_subset(m, rng);
         std::vector<int> both;
         std::set_intersection(w1.begin(), w1.end(), w2.begin(), w2.end(), std::back_inserter(both));
         return op_norm(p.measure(both) - p.measure(w1) * p.measure(w2));
       }},
      {"spectral-measures", "atoms_are_eigenvalues", 50, 0.0,
       [](Rng& rng) {
         const auto c = random_normal_case(rng);
         const auto p = resolve_normal(c.b);
         bool bad = p.size() != c.multiplicities.size();
         const auto ranks = p.ranks();
         for (size_t i = 0; i < p.size() && !bad; ++i) {
           const auto chk = atom_eigen_check(p, c.b, p.points[i]);
           bad = !chk.is_atom || chk.eigenspace.cols() != ranks[i];
         }
         const auto off = atom_eigen_check(p, c.b, Complex(100.0, 0.0));
         return flag(bad || off.is_atom);
       }},
      {"spectral-measures", "functional_positivity", 50, 0.0,
       [](Rng& rng) {
         const auto p = resolve_normal(random_normal_case(rng).b);
         std::vector<double> f;
         for (size_t i = 0; i < p.size(); ++i)
           f.push_back((uniform_int(rng, 0, 3) == 0 ? -1.0 : 1.0) * uniform(rng, 0.1, 2.0));
         const Matrix m = pi_P(p, [&](Complex z) {
           for (size_t i = 0; i < p.size(); ++i)
             if (z == p.points[i]) return Complex(f[i], 0.0);
           return Complex(0.0, 0.0);
         });
         const bool nonneg = std::all_of(f.begin(), f.end(), [](double v) { return v >= 0; });
         return flag(nonneg != (min_eig(m) >= -1e-12));
       }},
      {"spectral-measures", "projections_are_indicators", 50, 0.0,
       [](Rng& rng) {
         const auto p = resolve_normal(random_normal_case(rng).b);
         std::vector<Complex> f;
         bool indicator = true;
         for (size_t i = 0; i < p.size(); ++i) {
           const int kind = uniform_int(rng, 0, 4);
           f.push_back(kind == 0 ? Complex(0.0) : kind <= 2 ? Complex(1.0) : Complex(uniform(rng, 1.5, 3.0), 0.5));
           indicator = indicator && kind <= 2;
         }
         const Matrix m = pi_P(p, [&](Complex z) {
           for (size_t i = 0; i < p.size(); ++i)
             if (z == p.points[i]) return f[i];
           return Complex(0.0);
         });
         const bool projection = (m * m - m).norm() <= 1e-10 && linalg::hermiticity_defect(m) <= 1e-10;
         return flag(projection != indicator);
       }},
      {"spectral-measures", "monotone_convergence", 30, 1e-12,
       [](Rng& rng) {
         const auto p = resolve_normal(random_normal_case(rng).b);
         std::vector<double> f;
         for (size_t i = 0; i < p.size(); ++i) f.push_back(uniform(rng, 0.0, 2.0));
         auto lookup = [&](double factor) {
           return [&, factor](Complex z) {
             for (size_t i = 0; i < p.size(); ++i)
               if (z == p.points[i]) return Complex(factor * f[i], 0.0);
             return Complex(0.0);
           };
         };
         double worst = 0.0;
         Matrix prev = pi_P(p, lookup(0.0));
         const Matrix limit = pi_P(p, lookup(1.0));
         for (int k = 1; k <= 20; ++k) {
           const Matrix cur = pi_P(p, lookup(1.0 - std::ldexp(1.0, -k)));
           worst = std::max(worst, std::max(0.0, -min_eig(cur - prev)));
           worst = std::max(worst, std::max(0.0, -min_eig(limit - cur)));
           prev = cur;
         }
         return worst + std::max(0.0, op_norm(limit - prev) - 2.0 * std::ldexp(1.0, -20));
       }},
      {"spectral-measures", "fuglede_putnam", 30, 1e-8,
       [](Rng& rng) {
         const auto c1 = random_normal_case(rng);
         // n₂ shares n₁'s spectrum so that nonzero intertwiners exist.
         const Matrix u = random_unitary(c1.b.rows(), rng);
         const Matrix n2 = u * c1.b * u.adjoint();
         const auto space = intertwiners(std::span<const Matrix>(&c1.b, 1), std::span<const Matrix>(&n2, 1));
         Matrix a = Matrix::Zero(n2.rows(), c1.b.rows());
         for (const auto& x : space.basis()) a += random_complex(rng) * x;
         const double scale = op_norm(a) * std::max(op_norm(c1.b), op_norm(n2));
         return op_norm(a * c1.b.adjoint() - n2.adjoint() * a) / scale;
       }},
      {"spectral-measures", "multiplication_norm", 20, 1e-9,
       [](Rng& rng) {
         const int n = 1 << uniform_int(rng, 1, 3);
         const auto ring = group_ring(FiniteGroup::cyclic(n));
         const auto chars = characters(ring.algebra, rng());
         Vector c = Vector::Zero(n);
         c(ring.group.identity()) = 1.0;
         const auto sr = spectral_representation(ring.algebra.basis(), c, chars, rng());
         const Matrix x = random_element(ring.algebra, rng);
         const Vector hat = gelfand_transform(ring.algebra.coords(x), chars);
         double sup = 0.0;
         for (int k : sr.support) sup = std::max(sup, std::abs(hat(k)));
         return std::abs(op_norm(x) - sup) / std::max(1.0, sup);
       }},
  };
}

std::vector<Property> commutant_properties() {
  return {
      {"commutant", "order_reversal", 20, 1e-9,
       [](Rng& rng) {
         const auto n = uniform_int(rng, 2, 4);
         // A degenerate spectrum keeps T′ larger than the scalars.
         const std::vector<Matrix> t{random_normal_with_multiplicities(std::vector<int>{n - 1, 1}, rng)};
         std::vector<Matrix> s = t;
         const auto tc = commutant(t).basis();
         s.push_back(tc[static_cast<size_t>(uniform_int(rng, 0, static_cast<int>(tc.size()) - 1))]);
         return subspace_excess(commutant(s), commutant(t));
       }},
      {"commutant", "triple_commutant", 20, 1e-10,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto gens = a.basis();
         const auto once = commutant(gens);
         return max_principal_angle(commutant(commutant(once)), once);
       }},
      {"commutant", "commutant_is_star_algebra", 20, 1e-9,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto c = commutant(a.basis());
         const auto basis = c.basis();
         double worst = 0.0;
         for (const auto& x : basis) {
           worst = std::max(worst, (Matrix(x.adjoint()) - c.project(x.adjoint())).norm());
           for (const auto& y : basis) worst = std::max(worst, (x * y - c.project(x * y)).norm());
         }
         return worst;
       }},
      {"commutant", "bicommutant", 20, 1e-10,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         return max_principal_angle(bicommutant(a.basis()), Subspace::of(a));
       }},
      {"commutant", "schur_cross_check", 20, 0.0,
       [](Rng& rng) {
         const auto a = random_algebra(rng);
         const auto phi = uniform_int(rng, 0, 1) == 0 ? Functional::vector_state(a, random_unit_vector(a.ambient_dim(), rng))
                                                       : random_state(a, rng);
         const auto report = classify_state(phi);
         const auto g = gns(phi);
         const bool irreducible = commutant(g.rep).dim() == 1;
         return flag(report.is_pure != irreducible);
       }},
  };
}

std::vector<Property> evolution_properties() {
  return {
      {"evolution", "cayley_round_trip", 50, 1e-8,
       [](Rng& rng) {
         const SelfAdjointModel a(random_hermitian(uniform_int(rng, 2, 6), rng));
         return op_norm(inverse_cayley(cayley(a)) - a.matrix()) / (1.0 + op_norm(a.matrix()));
       }},
      {"evolution", "propagator_unitary", 200, 1e-9,
       [](Rng& rng) {
         const SelfAdjointModel a(random_hermitian(uniform_int(rng, 2, 6), rng));
         return linalg::unitarity_defect(a.propagator(uniform(rng, -1e3, 1e3)));
       }},
      {"evolution", "group_law", 50, 1e-10,
       [](Rng& rng) {
         const SelfAdjointModel a(random_hermitian(uniform_int(rng, 2, 6), rng));
         const Vector x = random_vector(a.dim(), rng);
         const double t = uniform(rng, -5, 5), s = uniform(rng, -5, 5);
         return (a.evolve(x, t + s) - a.evolve(a.evolve(x, s), t)).norm() / x.norm();
       }},
      {"evolution", "generator_first_order", 30, 1.0,
       [](Rng& rng) {
         const SelfAdjointModel a(random_hermitian(uniform_int(rng, 2, 6), rng));
         const Vector x = random_vector(a.dim(), rng);
         const double t = uniform(rng, 0, 3);
         double worst = 0.0;
         for (double h : {1e-2, 1e-3, 1e-4})
           worst = std::max(worst, std::abs(ivp_residual(a, x, t, h) / ivp_residual(a, x, t, h / 10) - 10.0));
         return worst;
       }},
      {"evolution", "truncation_independence", 20, 1e-14,
       [](Rng& rng) {
         const int support = uniform_int(rng, 1, 4);
         const auto id = [](int k) { return static_cast<double>(k); };
         const auto small = SelfAdjointModel::diagonal_truncation(id, 8);
         const auto large = SelfAdjointModel::diagonal_truncation(id, 32);
         Vector xs = Vector::Zero(8), xl = Vector::Zero(32);
         xs.head(support) = xl.head(support) = random_vector(support, rng);
         const double t = uniform(rng, -10, 10);
         const Vector ys = small.evolve(xs, t), yl = large.evolve(xl, t);
         return std::max((ys - yl.head(8)).norm(), yl.tail(24).norm()) / xs.norm();
       }},
  };
}

PropertyResult run_property(const Property& p, std::uint64_t seed, double scale) {
  PropertyResult r;
  r.module = p.module;
  r.name = p.name;
  r.tolerance = p.tol;
  Rng rng(seed);
  const int cases = std::max(1, static_cast<int>(std::lround(p.cases * scale)));
  for (int i = 0; i < cases; ++i) {
    ++r.cases;
    try {
      const double res = p.run(rng);
      if (!std::isfinite(res)) {
        r.max_residual = std::numeric_limits<double>::infinity();
        continue;
      }
      r.max_residual = std::max(r.max_residual, res);
      if (res <= p.tol) ++r.passed;
    } catch (const std::exception& e) {
      if (r.first_error.empty()) r.first_error = e.what();
    }
  }
  return r;
}

}  // namespace

std::vector<PropertyResult> run_suite(const SuiteOptions& options) {
  std::vector<Property> props;
  for (auto group : {algebra_core_properties(), spectral_calculus_properties(), gelfand_properties(),
                     states_gns_properties(), spectral_measure_properties(), commutant_properties(),
                     evolution_properties()})
    props.insert(props.end(), group.begin(), group.end());

  std::vector<PropertyResult> results(props.size());
  if (options.parallel) {
    std::vector<std::future<PropertyResult>> jobs;
    jobs.reserve(props.size());
    for (size_t i = 0; i < props.size(); ++i)
      jobs.push_back(std::async(std::launch::async, run_property, std::cref(props[i]), options.seed + i, options.scale));
    for (size_t i = 0; i < props.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (size_t i = 0; i < props.size(); ++i) results[i] = run_property(props[i], options.seed + i, options.scale);
  }
  return results;
}

}  // namespace stargebra::checks
