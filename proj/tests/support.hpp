#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qdom/linalg.hpp"
#include "qdom/oracles.hpp"
#include "qdom/state.hpp"

namespace qtest {

using qdom::Complex;
using qdom::Matrix;
using qdom::oracle::Rng;

inline constexpr double kSqrtHalf = 0.70710678118654752;

inline Matrix random_matrix(Rng& rng, std::size_t d) {
  Matrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) m(i, k) = Complex(rng.normal(), rng.normal());
  return m;
}

inline Matrix random_hermitian(Rng& rng, std::size_t d) {
  const Matrix a = random_matrix(rng, d);
  return (a + a.adjoint()) * Complex(0.5);
}

/// Random PSD matrix with the given trace.
inline qdom::DensityMatrix random_density(Rng& rng, std::size_t d, double trace = 1.0) {
  const Matrix a = random_matrix(rng, d);
  Matrix m = a * a.adjoint();
  m *= Complex(trace / m.trace().real());
  return qdom::DensityMatrix(m);
}

/// Projector onto a random k-dimensional subspace, via Gram-Schmidt.
inline Matrix random_projection(Rng& rng, std::size_t d, std::size_t k) {
  std::vector<qdom::Vector> basis;
  while (basis.size() < k) {
    qdom::Vector v(d);
    for (auto& z : v) z = Complex(rng.normal(), rng.normal());
    for (const auto& b : basis) {
      const Complex c = qdom::inner(b, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
    }
    const double n = qdom::norm(v);
    if (n < 1e-6) continue;
    for (auto& z : v) z /= n;
    basis.push_back(std::move(v));
  }
  Matrix p(d);
  for (const auto& b : basis) p += Matrix::outer(b, b);
  return p;
}

/// Eigenvalues of a 2x2 Hermitian matrix, descending, by the quadratic formula.
inline std::pair<double, double> eig2(const Matrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = std::abs(m(0, 1));
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return {mid + rad, mid - rad};
}

}  // namespace qtest
